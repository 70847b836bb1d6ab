/**
 * Heat map model for contribution matrices.
 *
 * The service sends both raw contributions and normalized [0, 1] shades;
 * this module maps shades onto the blue ramp the rest of the tooling uses
 * and lays the cells out row by row for rendering.
 */

export const RAMP_LOW = "#f7fbff";
export const RAMP_HIGH = "#08306b";

export interface HeatCell {
	architecture: string;
	value: number;
	shade: number;
	color: string;
	/** Dark cells need light text and vice versa. */
	textColor: string;
}

export interface HeatRow {
	attribute: string;
	cells: HeatCell[];
}

function channels(hex: string): [number, number, number] {
	return [
		parseInt(hex.slice(1, 3), 16),
		parseInt(hex.slice(3, 5), 16),
		parseInt(hex.slice(5, 7), 16),
	];
}

const LOW = channels(RAMP_LOW);
const HIGH = channels(RAMP_HIGH);

/** Linear interpolation on the ramp; input outside [0, 1] is clamped. */
export function rampColor(shade: number): string {
	const t = Math.min(1, Math.max(0, shade));
	const parts = LOW.map((low, i) => {
		const high = HIGH[i] ?? 0;
		return Math.round(low + (high - low) * t)
			.toString(16)
			.padStart(2, "0");
	});
	return `#${parts.join("")}`;
}

/** Perceived-brightness cutoff for switching the cell label color. */
export function textColorFor(shade: number): string {
	return shade > 0.55 ? "#f5f7fa" : "#1a2433";
}

/**
 * Join raw contributions with their normalized shades into display rows.
 * Attribute order follows the matrix; architecture order is the caller's.
 */
export function buildHeatRows(
	matrix: Record<string, Record<string, number>>,
	shades: Record<string, Record<string, number>>,
	architectures: string[],
): HeatRow[] {
	return Object.keys(matrix).map((attribute) => {
		const valueRow = matrix[attribute] ?? {};
		const shadeRow = shades[attribute] ?? {};
		const cells = architectures.map((architecture) => {
			const shade = shadeRow[architecture] ?? 0;
			return {
				architecture,
				value: valueRow[architecture] ?? 0,
				shade,
				color: rampColor(shade),
				textColor: textColorFor(shade),
			};
		});
		return { attribute, cells };
	});
}
