/* tslint:disable */
/* eslint-disable */

export class FiniteComparison {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Interleaved `[λ, P(λ), …]`.
     */
    readonly curve: Float64Array;
    readonly edges: Float64Array;
    readonly histogram: Float64Array;
    readonly l1: number;
}

/**
 * Interleaved `[x, P_HS, P_B, x, …]`.
 */
export function asymptoticCurves(points: number): Float64Array;

export function finiteNComparison(n: number, k: number, samples: number, bins: number, seed: number): FiniteComparison;

/**
 * Interleaved `[x, P, x, …]`.
 */
export function pasturCurve(alpha: number, points: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_finitecomparison_free: (a: number, b: number) => void;
    readonly asymptoticCurves: (a: number) => [number, number, number, number];
    readonly finiteNComparison: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly finitecomparison_curve: (a: number) => [number, number];
    readonly finitecomparison_edges: (a: number) => [number, number];
    readonly finitecomparison_histogram: (a: number) => [number, number];
    readonly finitecomparison_l1: (a: number) => number;
    readonly pasturCurve: (a: number, b: number) => [number, number, number, number];
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
