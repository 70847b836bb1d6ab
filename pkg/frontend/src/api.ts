/**
 * Typed client for the rangematch HTTP API.
 *
 * Every request the UI makes goes through this module, and every path it
 * can reach is listed in ENDPOINTS. Nothing here talks to any other origin
 * or any undocumented route.
 */

export const API_ROOT = "/api/v1";

/** The documented API surface. The UI never requests anything else. */
export const ENDPOINTS = {
	health: `${API_ROOT}/health`,
	attributes: `${API_ROOT}/attributes`,
	architectures: `${API_ROOT}/architectures`,
	exampleProfile: `${API_ROOT}/profiles/example`,
	match: `${API_ROOT}/match`,
	compare: `${API_ROOT}/compare`,
} as const;

export interface Profile {
	schema_version: string;
	label?: string;
	selections: Record<string, string>;
}

export interface Attribute {
	name: string;
	set: "purpose" | "scope" | "constraints";
	values: string[];
	description: string;
}

export interface AttributesResponse {
	schema_version: string;
	attributes: Attribute[];
}

export interface Architecture {
	id: string;
	display_name: string;
	summary: string;
	metric_ratings: Record<string, number>;
	strengths: string[];
	weaknesses: string[];
	security_annotations: Record<string, number>;
}

export interface ArchitecturesResponse {
	catalog_version: string;
	architectures: Architecture[];
}

export interface NormalizedMatrix {
	mode: string;
	values: Record<string, Record<string, number>>;
}

export interface MatchResult {
	totals: Record<string, number>;
	ranking: string[][];
	matrix: Record<string, Record<string, number>>;
	profile_echo: Profile;
	dataset_source: string;
	normalized: NormalizedMatrix;
}

export interface CompareResult {
	dataset_source: string;
	results: Array<Record<string, unknown>>;
}

export interface HealthResult {
	status: string;
	version: string;
	dataset_source: string;
}

export type NormalizationMode = "global_linear" | "per_attribute_linear";

/** Narrow fetch signature so tests can inject a recording fake. */
export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Error body the service returns for rejected requests. */
export interface ApiErrorBody {
	code: string;
	message: string;
	details?: Record<string, unknown>;
}

export class ApiError extends Error {
	readonly code: string;
	readonly status: number;
	readonly details: Record<string, unknown>;

	constructor(status: number, body: ApiErrorBody) {
		super(body.message);
		this.name = "ApiError";
		this.code = body.code;
		this.status = status;
		this.details = body.details ?? {};
	}
}

async function request<T>(fetcher: FetchLike, path: string, init?: RequestInit): Promise<T> {
	const response = await fetcher(path, {
		...init,
		headers: { Accept: "application/json", ...(init?.headers ?? {}) },
	});
	let body: unknown = null;
	try {
		body = await response.json();
	} catch {
		// leave body null; handled below
	}
	if (!response.ok) {
		const record = body as Partial<ApiErrorBody> | null;
		throw new ApiError(response.status, {
			code: record?.code ?? `Http${response.status}`,
			message: record?.message ?? `request to ${path} failed with status ${response.status}`,
			details: record?.details,
		});
	}
	return body as T;
}

function post(payload: unknown): RequestInit {
	return {
		method: "POST",
		headers: { "Content-Type": "application/json" },
		body: JSON.stringify(payload),
	};
}

export function fetchHealth(fetcher: FetchLike = fetch): Promise<HealthResult> {
	return request(fetcher, ENDPOINTS.health);
}

export function fetchAttributes(fetcher: FetchLike = fetch): Promise<AttributesResponse> {
	return request(fetcher, ENDPOINTS.attributes);
}

export function fetchArchitectures(fetcher: FetchLike = fetch): Promise<ArchitecturesResponse> {
	return request(fetcher, ENDPOINTS.architectures);
}

export function fetchExampleProfile(fetcher: FetchLike = fetch): Promise<Profile> {
	return request(fetcher, ENDPOINTS.exampleProfile);
}

export function requestMatch(
	profile: Profile,
	normalization: NormalizationMode = "global_linear",
	fetcher: FetchLike = fetch,
): Promise<MatchResult> {
	return request(fetcher, ENDPOINTS.match, post({ profile, normalization }));
}

export function requestCompare(profiles: Profile[], fetcher: FetchLike = fetch): Promise<CompareResult> {
	return request(fetcher, ENDPOINTS.compare, post({ profiles }));
}

/**
 * Wrap an async function so that only the most recent call reports back.
 * Responses to superseded calls resolve to undefined instead, which keeps
 * a fast-typing user from seeing an older match overwrite a newer one.
 */
export function latestWins<A extends unknown[], R>(
	run: (...args: A) => Promise<R>,
): (...args: A) => Promise<R | undefined> {
	let ticket = 0;
	return async (...args: A) => {
		const mine = ++ticket;
		const result = await run(...args);
		return mine === ticket ? result : undefined;
	};
}
