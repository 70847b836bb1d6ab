/**
 * Pure ranking helpers for match results.
 *
 * The service already returns tie groups; these functions turn totals and
 * groups into display rows, recompute groups locally as a cross-check, and
 * diff two sets of totals for the what-if view.
 */

export interface RankedRow {
	architecture: string;
	total: number;
	/** Dense rank: every member of a tie group shares the group's rank. */
	rank: number;
}

export interface DeltaRow {
	architecture: string;
	baseline: number;
	candidate: number;
	delta: number;
}

/**
 * Group architectures by exactly equal totals, highest first. Within a
 * group the supplied order is kept, so callers pass the catalog order.
 */
export function rankGroups(totals: Record<string, number>, order: string[]): string[][] {
	const groups = new Map<number, string[]>();
	for (const architecture of order) {
		const total = totals[architecture];
		if (total === undefined) {
			throw new Error(`totals are missing architecture "${architecture}"`);
		}
		const group = groups.get(total);
		if (group) {
			group.push(architecture);
		} else {
			groups.set(total, [architecture]);
		}
	}
	return [...groups.entries()].sort((a, b) => b[0] - a[0]).map(([, members]) => members);
}

/** Flatten tie groups into table rows with dense ranks starting at 1. */
export function rowsFromGroups(groups: string[][], totals: Record<string, number>): RankedRow[] {
	const rows: RankedRow[] = [];
	groups.forEach((members, index) => {
		for (const architecture of members) {
			rows.push({ architecture, total: totals[architecture] ?? 0, rank: index + 1 });
		}
	});
	return rows;
}

/** The architectures sharing the best total; these get highlighted. */
export function topGroup(groups: string[][]): string[] {
	return groups[0] ?? [];
}

/**
 * Per-architecture difference between a pinned baseline and a candidate.
 * Comparing a result against itself yields a delta of exactly zero on
 * every row, which the what-if view relies on as its neutral state.
 */
export function compareTotals(
	baseline: Record<string, number>,
	candidate: Record<string, number>,
	order: string[],
): DeltaRow[] {
	return order.map((architecture) => {
		const before = baseline[architecture] ?? 0;
		const after = candidate[architecture] ?? 0;
		return { architecture, baseline: before, candidate: after, delta: after - before };
	});
}

/** Format a delta for display: sign always shown, zero stays plain. */
export function formatDelta(delta: number, digits = 1): string {
	const fixed = delta.toFixed(digits);
	if (Number(fixed) === 0) {
		return (0).toFixed(digits);
	}
	return delta > 0 ? `+${fixed}` : fixed;
}
