/**
 * Loader for responses captured from the running service. Capturing real
 * payloads keeps these tests honest about the wire format instead of
 * testing against hand-written guesses.
 */

import { readFileSync } from "node:fs";
import type {
	ArchitecturesResponse,
	AttributesResponse,
	MatchResult,
	Profile,
} from "../src/api.js";

function load<T>(name: string): T {
	const url = new URL(`./fixtures/${name}.json`, import.meta.url);
	return JSON.parse(readFileSync(url, "utf-8")) as T;
}

export const exampleProfile = load<Profile>("example-profile");
export const exampleMatch = load<MatchResult>("example-match");
export const attributesResponse = load<AttributesResponse>("attributes");
export const architecturesResponse = load<ArchitecturesResponse>("architectures");

export const architectureOrder = architecturesResponse.architectures.map((a) => a.id);
