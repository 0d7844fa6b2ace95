import type { CurveSpec } from "./api.js";

export type Mode = "eq3" | "bicircular" | "tricircular" | "orbit-chain";
export type Overlay = "full" | "fundamental-arc" | "rotated-copies";

export interface SliderDef {
  label: string;
  min: number;
  max: number;
  step: number;
  value: number;
}

// a and b are frequency parameters: their increment is defined to be 1,
// anything else would silently change the curve family.
export const SLIDER_DEFS = {
  a: { label: "a", min: -30, max: 30, step: 1, value: 6 },
  b: { label: "b", min: -30, max: 30, step: 1, value: 14 },
  c: { label: "c", min: -3, max: 3, step: 0.05, value: 1 },
  r1: { label: "r1", min: 0.05, max: 3, step: 0.05, value: 1 },
  f1: { label: "f1", min: -20, max: 20, step: 1, value: 1 },
  r2: { label: "r2", min: 0.05, max: 3, step: 0.05, value: 0.5 },
  f2: { label: "f2", min: -20, max: 20, step: 1, value: 7 },
  r3: { label: "r3", min: 0.05, max: 3, step: 0.05, value: 0.25 },
  f3: { label: "f3", min: -20, max: 20, step: 1, value: -13 },
  linkRadius1: { label: "radius 1", min: 0.1, max: 3, step: 0.05, value: 1 },
  linkPeriod1: { label: "period 1", min: 0.1, max: 5, step: 0.01, value: 1 },
  linkRadius2: { label: "radius 2", min: 0.1, max: 3, step: 0.05, value: 1.5 },
  linkPeriod2: { label: "period 2", min: 0.1, max: 5, step: 0.01, value: 1.88 },
  m: { label: "arcs m", min: 1, max: 24, step: 1, value: 5 },
  speed: { label: "speed", min: 0.05, max: 3, step: 0.05, value: 0.5 },
} satisfies Record<string, SliderDef>;

export type SliderName = keyof typeof SLIDER_DEFS;

export interface ExplorerState {
  mode: Mode;
  values: Record<SliderName, number>;
  overlay: Overlay;
  animate: boolean;
  trace: boolean;
  maxDenominator: number;
  link2Direction: 1 | -1;
}

export function defaultState(): ExplorerState {
  const values = Object.fromEntries(
    Object.entries(SLIDER_DEFS).map(([name, def]) => [name, def.value]),
  ) as Record<SliderName, number>;
  return {
    mode: "eq3",
    values,
    overlay: "full",
    animate: false,
    trace: false,
    maxDenominator: 100,
    link2Direction: 1,
  };
}

export function clampToSlider(name: SliderName, raw: number): number {
  const def = SLIDER_DEFS[name];
  const snapped = Math.round((raw - def.min) / def.step) * def.step + def.min;
  const fixed = Number(snapped.toFixed(6));
  return Math.min(def.max, Math.max(def.min, fixed));
}

export function specFromState(state: ExplorerState): CurveSpec {
  const v = state.values;
  switch (state.mode) {
    case "eq3":
      return { preset: { name: "eq3", params: [v.a, v.b, v.c] } };
    case "bicircular":
      return {
        components: [
          { freq_num: v.f1, freq_den: 1, amplitude: v.r1, phase: 0 },
          { freq_num: v.f2, freq_den: 1, amplitude: v.r2, phase: 0 },
        ],
      };
    case "tricircular":
      return {
        preset: {
          name: "tricircular",
          params: [v.r1, v.f1, v.r2, v.f2, v.r3, v.f3],
        },
      };
    case "orbit-chain":
      return {
        chain: {
          links: [
            { radius: v.linkRadius1, period: v.linkPeriod1 },
            {
              radius: v.linkRadius2,
              period: v.linkPeriod2,
              direction: state.link2Direction,
            },
          ],
          max_denominator: state.maxDenominator,
        },
      };
  }
}

export function slidersForMode(mode: Mode): SliderName[] {
  switch (mode) {
    case "eq3":
      return ["a", "b", "c"];
    case "bicircular":
      return ["r1", "f1", "r2", "f2"];
    case "tricircular":
      return ["r1", "f1", "r2", "f2", "r3", "f3"];
    case "orbit-chain":
      return ["linkRadius1", "linkPeriod1", "linkRadius2", "linkPeriod2"];
  }
}

// file names like eq3_6_14_1_m5.svg so a folder of exports stays legible
export function exportFilename(state: ExplorerState, ext: string): string {
  const v = state.values;
  let params: number[];
  switch (state.mode) {
    case "eq3":
      params = [v.a, v.b, v.c];
      break;
    case "bicircular":
      params = [v.r1, v.f1, v.r2, v.f2];
      break;
    case "tricircular":
      params = [v.r1, v.f1, v.r2, v.f2, v.r3, v.f3];
      break;
    case "orbit-chain":
      params = [v.linkRadius1, v.linkPeriod1, v.linkRadius2, v.linkPeriod2];
      break;
  }
  const tag = params.map((x) => String(x).replace(/[.-]/g, "_")).join("_");
  return `${state.mode}_${tag}_m${v.m}.${ext}`;
}
