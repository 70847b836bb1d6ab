/**
 * Profile draft state.
 *
 * A draft is the form's working copy of a requirement profile. Exports
 * produce exactly the JSON document the command line tools accept, and
 * imports apply the same shape checks those tools do so a bad file fails
 * here with a readable message instead of later against the service.
 */

import type { Profile } from "./api.js";

export const PROFILE_SCHEMA_VERSION = "1";

export interface ProfileDraft {
	schemaVersion: string;
	label: string;
	selections: Record<string, string>;
}

export function emptyDraft(label = ""): ProfileDraft {
	return { schemaVersion: PROFILE_SCHEMA_VERSION, label, selections: {} };
}

/** Copy-on-write setter; an empty value clears the attribute instead. */
export function setSelection(draft: ProfileDraft, attribute: string, value: string): ProfileDraft {
	const selections = { ...draft.selections };
	if (value === "") {
		delete selections[attribute];
	} else {
		selections[attribute] = value;
	}
	return { ...draft, selections };
}

export function setLabel(draft: ProfileDraft, label: string): ProfileDraft {
	return { ...draft, label };
}

export function draftFromProfile(profile: Profile): ProfileDraft {
	return {
		schemaVersion: profile.schema_version,
		label: profile.label ?? "",
		selections: { ...profile.selections },
	};
}

/** The wire and file form of a draft. A blank label is omitted. */
export function profileFromDraft(draft: ProfileDraft): Profile {
	const profile: Profile = {
		schema_version: draft.schemaVersion,
		selections: { ...draft.selections },
	};
	if (draft.label !== "") {
		profile.label = draft.label;
	}
	return profile;
}

/** Serialize a draft to the profile JSON the command line tools read. */
export function exportDraft(draft: ProfileDraft): string {
	const profile = profileFromDraft(draft);
	const ordered: Record<string, unknown> = {
		schema_version: profile.schema_version,
		...(profile.label !== undefined ? { label: profile.label } : {}),
		selections: Object.fromEntries(
			Object.keys(profile.selections)
				.sort()
				.map((name) => [name, profile.selections[name]]),
		),
	};
	return `${JSON.stringify(ordered, null, 2)}\n`;
}

const PROFILE_FIELDS = new Set(["schema_version", "label", "selections"]);

/** Parse profile JSON, rejecting anything the tools would also reject. */
export function importDraft(text: string): ProfileDraft {
	let parsed: unknown;
	try {
		parsed = JSON.parse(text);
	} catch {
		throw new Error("not valid JSON");
	}
	if (typeof parsed !== "object" || parsed === null || Array.isArray(parsed)) {
		throw new Error("profile must be a JSON object");
	}
	const doc = parsed as Record<string, unknown>;
	for (const field of Object.keys(doc)) {
		if (!PROFILE_FIELDS.has(field)) {
			throw new Error(`unknown profile field "${field}"`);
		}
	}
	if (typeof doc.schema_version !== "string") {
		throw new Error("schema_version must be a string");
	}
	if (doc.label !== undefined && typeof doc.label !== "string") {
		throw new Error("label must be a string");
	}
	if (typeof doc.selections !== "object" || doc.selections === null || Array.isArray(doc.selections)) {
		throw new Error("selections must be an object of attribute to value");
	}
	const selections: Record<string, string> = {};
	for (const [attribute, value] of Object.entries(doc.selections)) {
		if (typeof value !== "string") {
			throw new Error(`selection "${attribute}" must be a string value`);
		}
		selections[attribute] = value;
	}
	return {
		schemaVersion: doc.schema_version,
		label: typeof doc.label === "string" ? doc.label : "",
		selections,
	};
}

/** Storage subset a draft store needs; tests inject a plain map. */
export interface StringStore {
	getItem(key: string): string | null;
	setItem(key: string, value: string): void;
}

export interface DraftStore {
	load(): ProfileDraft | null;
	save(draft: ProfileDraft): void;
}

const STORAGE_KEY = "rangematch.draft";

/** Persist drafts across reloads; corrupt stored text is treated as absent. */
export function draftStore(storage: StringStore): DraftStore {
	return {
		load(): ProfileDraft | null {
			const text = storage.getItem(STORAGE_KEY);
			if (text === null) {
				return null;
			}
			try {
				return importDraft(text);
			} catch {
				return null;
			}
		},
		save(draft: ProfileDraft): void {
			storage.setItem(STORAGE_KEY, exportDraft(draft));
		},
	};
}
