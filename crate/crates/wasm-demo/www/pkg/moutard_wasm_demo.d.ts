/* tslint:disable */
/* eslint-disable */

/**
 * Root trajectories of the flow `P_t = ±P_zzz`.
 */
export class Trajectory {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Per time, `re, im` of every root in path order.
     */
    coords(): Float64Array;
    degree(): number;
    event_times(): Float64Array;
    times(): Float64Array;
}

/**
 * `log₁₀|ψ e^{−λz}|` on an `n × n` grid over `[−extent, extent]²`, row by row
 * from the top. Pixels on a center are `NaN`.
 */
export function modulus_field(roots: Float64Array, lambda_re: number, lambda_im: number, extent: number, n: number): Float64Array;

export function root_trajectories(roots: Float64Array, t0: number, t1: number, steps: number, flow_sign: number): Trajectory;

/**
 * `[re a, im a, re b, im b, re(−2N/λ), im(−2N/λ), count]`; the count is
 * `NaN` when `a` is inconsistent with an integer number of centers.
 */
export function scattering(roots: Float64Array, lambda_re: number, lambda_im: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_trajectory_free: (a: number, b: number) => void;
    readonly modulus_field: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly root_trajectories: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly scattering: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly trajectory_coords: (a: number) => [number, number];
    readonly trajectory_degree: (a: number) => number;
    readonly trajectory_event_times: (a: number) => [number, number];
    readonly trajectory_times: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
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
