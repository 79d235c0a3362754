/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_trajectory_free: (a: number, b: number) => void;
export const modulus_field: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
export const root_trajectories: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const scattering: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const trajectory_coords: (a: number) => [number, number];
export const trajectory_degree: (a: number) => number;
export const trajectory_event_times: (a: number) => [number, number];
export const trajectory_times: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
