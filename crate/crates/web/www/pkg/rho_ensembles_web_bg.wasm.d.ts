/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_finitecomparison_free: (a: number, b: number) => void;
export const asymptoticCurves: (a: number) => [number, number, number, number];
export const finiteNComparison: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const finitecomparison_curve: (a: number) => [number, number];
export const finitecomparison_edges: (a: number) => [number, number];
export const finitecomparison_histogram: (a: number) => [number, number];
export const finitecomparison_l1: (a: number) => number;
export const pasturCurve: (a: number, b: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
