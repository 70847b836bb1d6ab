/**
 * DOM wiring for the matcher UI.
 *
 * All network traffic goes through api.ts. This module builds the profile
 * form from the service's taxonomy, keeps a draft in local storage, runs a
 * debounced match on every change, and renders ranking, what-if deltas,
 * and the contribution heat map.
 */

import {
	ApiError,
	fetchArchitectures,
	fetchAttributes,
	fetchExampleProfile,
	fetchHealth,
	latestWins,
	requestMatch,
	type Architecture,
	type Attribute,
	type MatchResult,
	type NormalizationMode,
	type Profile,
} from "./api.js";
import { buildHeatRows } from "./heatmap.js";
import { compareTotals, formatDelta, rowsFromGroups, topGroup } from "./ranking.js";
import {
	draftFromProfile,
	draftStore,
	emptyDraft,
	exportDraft,
	importDraft,
	profileFromDraft,
	setLabel,
	setSelection,
	type ProfileDraft,
} from "./state.js";

const ATTRIBUTE_SETS: Array<{ id: Attribute["set"]; heading: string }> = [
	{ id: "purpose", heading: "Purpose" },
	{ id: "scope", heading: "Scope" },
	{ id: "constraints", heading: "Constraints" },
];

const DEBOUNCE_MS = 250;

interface UiState {
	draft: ProfileDraft;
	mode: NormalizationMode;
	architectures: Architecture[];
	attributes: Attribute[];
	result: MatchResult | null;
	baseline: { label: string; totals: Record<string, number> } | null;
}

const state: UiState = {
	draft: emptyDraft(),
	mode: "global_linear",
	architectures: [],
	attributes: [],
	result: null,
	baseline: null,
};

const store = draftStore(window.localStorage);
const matchLatest = latestWins((profile: Profile, mode: NormalizationMode) =>
	requestMatch(profile, mode),
);

function byId<T extends HTMLElement>(id: string): T {
	const node = document.getElementById(id);
	if (!node) {
		throw new Error(`missing element #${id}`);
	}
	return node as T;
}

function el<K extends keyof HTMLElementTagNameMap>(
	tag: K,
	className = "",
	text = "",
): HTMLElementTagNameMap[K] {
	const node = document.createElement(tag);
	if (className) {
		node.className = className;
	}
	if (text) {
		node.textContent = text;
	}
	return node;
}

function titleCase(identifier: string): string {
	return identifier
		.split("_")
		.map((word) => word.charAt(0).toUpperCase() + word.slice(1))
		.join(" ");
}

function displayName(architectureId: string): string {
	const entry = state.architectures.find((a) => a.id === architectureId);
	return entry ? entry.display_name : titleCase(architectureId);
}

function architectureOrder(): string[] {
	return state.architectures.map((a) => a.id);
}

function showError(message: string): void {
	const banner = byId<HTMLDivElement>("error");
	banner.textContent = message;
	banner.hidden = false;
}

function clearError(): void {
	byId<HTMLDivElement>("error").hidden = true;
}

function describeApiError(error: ApiError): string {
	const allowed = error.details.allowed;
	if (Array.isArray(allowed) && allowed.length > 0) {
		return `${error.code}: ${error.message} (allowed: ${allowed.join(", ")})`;
	}
	return `${error.code}: ${error.message}`;
}

/** Build one labelled select per attribute, grouped by requirement set. */
function renderForm(): void {
	const form = byId<HTMLFormElement>("profile-form");
	form.textContent = "";
	for (const set of ATTRIBUTE_SETS) {
		const fieldset = el("fieldset");
		fieldset.appendChild(el("legend", "", set.heading));
		for (const attribute of state.attributes.filter((a) => a.set === set.id)) {
			const row = el("label", "field");
			row.title = attribute.description;
			row.appendChild(el("span", "field-name", titleCase(attribute.name)));
			const select = el("select");
			select.dataset.attribute = attribute.name;
			const blank = el("option", "", "(no requirement)");
			blank.value = "";
			select.appendChild(blank);
			for (const value of attribute.values) {
				const option = el("option", "", titleCase(value));
				option.value = value;
				select.appendChild(option);
			}
			select.value = state.draft.selections[attribute.name] ?? "";
			select.addEventListener("change", () => {
				state.draft = setSelection(state.draft, attribute.name, select.value);
				draftChanged();
			});
			row.appendChild(select);
			fieldset.appendChild(row);
		}
		form.appendChild(fieldset);
	}
	byId<HTMLInputElement>("draft-label").value = state.draft.label;
}

function syncFormToDraft(): void {
	for (const select of document.querySelectorAll<HTMLSelectElement>("#profile-form select")) {
		const attribute = select.dataset.attribute ?? "";
		select.value = state.draft.selections[attribute] ?? "";
	}
	byId<HTMLInputElement>("draft-label").value = state.draft.label;
}

function renderRanking(result: MatchResult): void {
	const container = byId<HTMLDivElement>("ranking");
	container.textContent = "";
	const leaders = topGroup(result.ranking).map(displayName);
	const verdict = el("p", "verdict");
	verdict.append("Recommended: ");
	verdict.appendChild(el("strong", "", leaders.join(", ")));
	container.appendChild(verdict);

	const table = el("table", "ranking-table");
	const head = el("tr");
	for (const column of ["Rank", "Architecture", "Total"]) {
		head.appendChild(el("th", "", column));
	}
	table.appendChild(head);
	const best = topGroup(result.ranking);
	for (const row of rowsFromGroups(result.ranking, result.totals)) {
		const tr = el("tr", best.includes(row.architecture) ? "top" : "");
		tr.appendChild(el("td", "num", String(row.rank)));
		tr.appendChild(el("td", "", displayName(row.architecture)));
		tr.appendChild(el("td", "num", row.total.toFixed(1)));
		table.appendChild(tr);
	}
	container.appendChild(table);
}

function renderDeltas(result: MatchResult): void {
	const container = byId<HTMLDivElement>("whatif");
	container.textContent = "";
	if (!state.baseline) {
		container.appendChild(
			el("p", "hint", "Pin the current result to see how further edits move each total."),
		);
		return;
	}
	container.appendChild(el("p", "hint", `Against baseline "${state.baseline.label}":`));
	const table = el("table", "delta-table");
	const head = el("tr");
	for (const column of ["Architecture", "Baseline", "Now", "Delta"]) {
		head.appendChild(el("th", "", column));
	}
	table.appendChild(head);
	for (const row of compareTotals(state.baseline.totals, result.totals, architectureOrder())) {
		const tr = el("tr", row.delta === 0 ? "same" : row.delta > 0 ? "up" : "down");
		tr.appendChild(el("td", "", displayName(row.architecture)));
		tr.appendChild(el("td", "num", row.baseline.toFixed(1)));
		tr.appendChild(el("td", "num", row.candidate.toFixed(1)));
		tr.appendChild(el("td", "num", formatDelta(row.delta)));
		table.appendChild(tr);
	}
	container.appendChild(table);
}

function renderHeatmap(result: MatchResult): void {
	const container = byId<HTMLDivElement>("heatmap");
	container.textContent = "";
	const rows = buildHeatRows(result.matrix, result.normalized.values, architectureOrder());
	if (rows.length === 0) {
		container.appendChild(el("p", "hint", "Select at least one requirement to see contributions."));
		return;
	}
	const table = el("table", "heat-table");
	const head = el("tr");
	head.appendChild(el("th", "", "Attribute"));
	for (const architecture of architectureOrder()) {
		head.appendChild(el("th", "", displayName(architecture)));
	}
	table.appendChild(head);
	for (const row of rows) {
		const tr = el("tr");
		tr.appendChild(el("td", "", titleCase(row.attribute)));
		for (const cell of row.cells) {
			const td = el("td", "num heat-cell", cell.value.toFixed(1));
			td.style.backgroundColor = cell.color;
			td.style.color = cell.textColor;
			tr.appendChild(td);
		}
		table.appendChild(tr);
	}
	container.appendChild(table);
}

function renderResult(result: MatchResult): void {
	state.result = result;
	renderRanking(result);
	renderDeltas(result);
	renderHeatmap(result);
	byId<HTMLSpanElement>("dataset-source").textContent = result.dataset_source;
}

let pending: number | undefined;

function draftChanged(): void {
	store.save(state.draft);
	window.clearTimeout(pending);
	pending = window.setTimeout(() => void runMatch(), DEBOUNCE_MS);
}

async function runMatch(): Promise<void> {
	try {
		const result = await matchLatest(profileFromDraft(state.draft), state.mode);
		if (result === undefined) {
			return;
		}
		clearError();
		renderResult(result);
	} catch (error) {
		if (error instanceof ApiError) {
			showError(describeApiError(error));
		} else {
			showError(`request failed: ${String(error)}`);
		}
	}
}

function wireControls(exampleProfile: Profile): void {
	byId<HTMLInputElement>("draft-label").addEventListener("input", (event) => {
		state.draft = setLabel(state.draft, (event.target as HTMLInputElement).value);
		draftChanged();
	});

	byId<HTMLSelectElement>("normalization").addEventListener("change", (event) => {
		state.mode = (event.target as HTMLSelectElement).value as NormalizationMode;
		void runMatch();
	});

	byId<HTMLButtonElement>("pin-baseline").addEventListener("click", () => {
		if (!state.result) {
			return;
		}
		state.baseline = {
			label: state.draft.label || "unnamed draft",
			totals: { ...state.result.totals },
		};
		renderDeltas(state.result);
	});

	byId<HTMLButtonElement>("load-example").addEventListener("click", () => {
		state.draft = draftFromProfile(exampleProfile);
		syncFormToDraft();
		draftChanged();
	});

	byId<HTMLButtonElement>("clear-draft").addEventListener("click", () => {
		state.draft = emptyDraft(state.draft.label);
		syncFormToDraft();
		draftChanged();
	});

	byId<HTMLButtonElement>("export-draft").addEventListener("click", () => {
		byId<HTMLTextAreaElement>("profile-json").value = exportDraft(state.draft);
	});

	byId<HTMLButtonElement>("download-draft").addEventListener("click", () => {
		const blob = new Blob([exportDraft(state.draft)], { type: "application/json" });
		const anchor = el("a");
		anchor.href = URL.createObjectURL(blob);
		anchor.download = `${state.draft.label || "profile"}.json`;
		anchor.click();
		URL.revokeObjectURL(anchor.href);
	});

	byId<HTMLButtonElement>("import-draft").addEventListener("click", () => {
		try {
			state.draft = importDraft(byId<HTMLTextAreaElement>("profile-json").value);
			clearError();
			syncFormToDraft();
			draftChanged();
		} catch (error) {
			showError(`import failed: ${error instanceof Error ? error.message : String(error)}`);
		}
	});
}

async function boot(): Promise<void> {
	const [attributes, architectures, example, health] = await Promise.all([
		fetchAttributes(),
		fetchArchitectures(),
		fetchExampleProfile(),
		fetchHealth(),
	]);
	state.attributes = attributes.attributes;
	state.architectures = architectures.architectures;
	byId<HTMLSpanElement>("service-version").textContent = health.version;
	state.draft = store.load() ?? draftFromProfile(example);
	renderForm();
	wireControls(example);
	await runMatch();
}

boot().catch((error) => {
	showError(`the matching service is not reachable: ${String(error)}`);
});
