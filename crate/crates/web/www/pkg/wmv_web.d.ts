/* tslint:disable */
/* eslint-disable */

/**
 * Probability that weighted majority voting decides correctly.
 */
export function correctness(trust: Float64Array, truth: Float64Array): number;

/**
 * Stability of optimality and its two bounds under a symmetric extreme law.
 */
export function sooReportJson(trust: Float64Array, deltas: Float64Array): string;

/**
 * Correctness over two sources' axes.
 */
export function surfaceJson(trust: Float64Array, truth: Float64Array, mode: string, index_x: number, index_y: number, points: number): string;

/**
 * Correctness as source `index` (1-based) runs over its axis.
 */
export function sweepJson(trust: Float64Array, truth: Float64Array, mode: string, index: number, points: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly correctness: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly sooReportJson: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly surfaceJson: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number, number];
    readonly sweepJson: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
