/* tslint:disable */
/* eslint-disable */

/**
 * `[[eb_n0_db, value], ...]` of the minimum-weight union bound.
 */
export function bound(d_min: number, a_dmin: number, rate: number, from_db: number, to_db: number, step_db: number): string;

/**
 * Minimum-weight shell of a CRC-polar code on a PW inner code.
 */
export function concat(n: number, k_i: number, crc_hex: string): string;

/**
 * Constructs a polar code and enumerates its minimum-weight shell.
 */
export function mwd(n: number, k: number, construction: string, design_snr_db: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly bound: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly concat: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly mwd: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
