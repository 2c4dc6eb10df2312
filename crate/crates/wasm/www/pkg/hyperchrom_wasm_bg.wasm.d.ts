/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const bounded_expo_profile: (a: number, b: number) => [number, number];
export const chromatic_roots: (a: number, b: number) => [number, number];
export const decompose: (a: number, b: number) => [number, number];
export const family: (a: number, b: number, c: number, d: number, e: number, f: bigint) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
