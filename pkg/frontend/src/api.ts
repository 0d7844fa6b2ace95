// Typed client for the curve service. The UI never computes curve points
// itself; every number it draws came out of one of these calls.

export type RationalWire = number | [number, number] | string;

export interface PresetSpec {
  preset: { name: string; params: RationalWire[] };
  drift?: [number, number, number];
}

export interface ComponentDoc {
  freq_num: number;
  freq_den: number;
  amplitude: number;
  phase?: number;
}

export interface ComponentsSpec {
  components: ComponentDoc[];
  offset?: [number, number];
  drift?: [number, number, number];
}

export interface ChainLinkDoc {
  radius: number;
  period: RationalWire;
  direction?: 1 | -1;
  initial_phase?: number;
}

export interface ChainSpec {
  chain: { links: ChainLinkDoc[]; max_denominator?: number };
  drift?: [number, number, number];
}

export type CurveSpec = PresetSpec | ComponentsSpec | ChainSpec;

export interface SamplesResponse {
  params: number[];
  points: number[][];
  closed: boolean;
}

export interface SymmetryResponse {
  order: number | "infinite";
  rotation_angle: number;
  param_shift: number;
  reduced_frequencies: number[];
  verified: boolean;
  max_residual: number;
}

export interface ArcDoc {
  params: number[];
  points: number[][];
  closed: boolean;
  color_index: number;
}

export interface ArcsResponse {
  order_used: number;
  arcs: ArcDoc[];
}

export interface PlanetDoc {
  name: string;
  orbit_radius_km: number;
  radius_au: number;
  period_years: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly kind: string,
    readonly detail: string,
  ) {
    super(`${kind}: ${detail}`);
  }
}

// 422 means the frequencies cannot be made commensurable, which the UI
// renders as a "no finite symmetry" state rather than an error.
export function isNoFiniteSymmetry(err: unknown): boolean {
  return err instanceof ApiError && err.status === 422;
}

async function postJson<T>(
  url: string,
  body: unknown,
  signal?: AbortSignal,
): Promise<T> {
  const res = await fetch(url, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
    signal,
  });
  if (!res.ok) {
    let kind = "error";
    let detail = res.statusText;
    try {
      const doc = await res.json();
      kind = doc.error ?? kind;
      detail = doc.detail ?? detail;
    } catch {
      // non-JSON error body, keep the status text
    }
    throw new ApiError(res.status, kind, detail);
  }
  return (await res.json()) as T;
}

export function fetchPlanets(signal?: AbortSignal): Promise<PlanetDoc[]> {
  return fetch("/api/planets", { signal }).then((res) => {
    if (!res.ok) throw new ApiError(res.status, "error", res.statusText);
    return res.json() as Promise<PlanetDoc[]>;
  });
}

export function fetchSamples(
  spec: CurveSpec,
  n: number,
  signal?: AbortSignal,
): Promise<SamplesResponse> {
  return postJson("/api/curve/samples", { spec, n }, signal);
}

export function fetchSymmetry(
  spec: CurveSpec,
  maxDenominator?: number,
  signal?: AbortSignal,
): Promise<SymmetryResponse> {
  const body: Record<string, unknown> = { spec };
  if (maxDenominator !== undefined) body.max_denominator = maxDenominator;
  return postJson("/api/symmetry", body, signal);
}

export function fetchArcs(
  spec: CurveSpec,
  m: number,
  signal?: AbortSignal,
): Promise<ArcsResponse> {
  return postJson("/api/arcs", { spec, m }, signal);
}

export async function exportBlob(
  kind: "svg" | "stl",
  body: Record<string, unknown>,
): Promise<Blob> {
  const res = await fetch(`/api/export/${kind}`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  if (!res.ok) {
    let detail = res.statusText;
    let errKind = "error";
    try {
      const doc = await res.json();
      detail = doc.detail ?? detail;
      errKind = doc.error ?? errKind;
    } catch {
      // ignore
    }
    throw new ApiError(res.status, errKind, detail);
  }
  return res.blob();
}

export function formatOrderBadge(sym: SymmetryResponse): string {
  return sym.order === "infinite" ? "∞" : String(sym.order);
}
