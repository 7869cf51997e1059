/* tslint:disable */
/* eslint-disable */

/**
 * `N_bi(n, k)` divided by its leading asymptotic prediction, sampled every
 * `step` sizes up to `max_n`.
 */
export function asymptotic_curve(k: number, max_n: number, step: number): string;

/**
 * `N_bi(n, k)` for `1 ≤ n ≤ max_n`, with the complete-graph count alongside
 * where one is available.
 */
export function diagonal_table(k: number, max_n: number): string;

/**
 * The coefficient grid of `F_k` up to `order` in both variables.
 */
export function series_grid(k: number, order: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly asymptotic_curve: (a: number, b: number, c: number) => [number, number, number, number];
    readonly diagonal_table: (a: number, b: number) => [number, number, number, number];
    readonly series_grid: (a: number, b: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
