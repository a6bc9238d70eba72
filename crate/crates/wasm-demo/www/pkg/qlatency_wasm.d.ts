/* tslint:disable */
/* eslint-disable */

/**
 * `E[S_q]` for `q = 0..=min(qubits, q_max)` with the congestion delay of
 * each level for an uncongested delay of 1.
 */
export function coverage_distribution(width: number, length: number, area: number, qubits: number, q_max: number, capacity: number): string;

/**
 * Single-zone coverage probability of every ULB for zone area `area`.
 */
export function coverage_grid(width: number, length: number, area: number): string;

/**
 * Estimates a pasted netlist (`.qn` or `.real`), lowering it if needed.
 */
export function estimate_netlist(text: string, width: number, length: number, capacity: number, speed: number): string;

/**
 * Estimates a seeded random FT circuit.
 */
export function estimate_random(qubits: number, ops: number, cnot_fraction: number, seed: number, width: number, length: number, capacity: number, speed: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly coverage_distribution: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly coverage_grid: (a: number, b: number, c: number) => [number, number];
    readonly estimate_netlist: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly estimate_random: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
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
