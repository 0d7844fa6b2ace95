import {
  ApiError,
  ArcsResponse,
  CurveSpec,
  SamplesResponse,
  exportBlob,
  fetchArcs,
  fetchSamples,
  fetchSymmetry,
  formatOrderBadge,
  isNoFiniteSymmetry,
} from "./api.js";
import { debounce } from "./debounce.js";
import { drawScene, Scene } from "./draw.js";
import { LatestOnly } from "./seq.js";
import {
  ExplorerState,
  Mode,
  Overlay,
  SLIDER_DEFS,
  SliderName,
  clampToSlider,
  defaultState,
  exportFilename,
  slidersForMode,
  specFromState,
} from "./state.js";

const canvas = document.getElementById("canvas") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const badgeEl = document.getElementById("order-badge")!;
const errorEl = document.getElementById("error")!;
const controlsEl = document.getElementById("curve-controls")!;
const modeSelect = document.getElementById("mode") as HTMLSelectElement;
const overlaySelect = document.getElementById("overlay") as HTMLSelectElement;
const animateBox = document.getElementById("animate") as HTMLInputElement;
const traceBox = document.getElementById("trace") as HTMLInputElement;
const directionSelect = document.getElementById("direction") as HTMLSelectElement;
const maxDenInput = document.getElementById("max-den") as HTMLInputElement;
const chainOnlyEls = Array.from(
  document.querySelectorAll<HTMLElement>(".chain-only"),
);
const svgButton = document.getElementById("export-svg") as HTMLButtonElement;
const stlButton = document.getElementById("export-stl") as HTMLButtonElement;

const state: ExplorerState = defaultState();

const scene: Scene = {
  samples: null,
  arcs: null,
  overlay: state.overlay,
  m: state.values.m,
  tracePoints: [],
  marker: null,
};

const samplesGate = new LatestOnly();
const symmetryGate = new LatestOnly();
const arcsGate = new LatestOnly();

let animPhase = 0;
let lastFrame = performance.now();

function showError(message: string | null) {
  errorEl.textContent = message ?? "";
  errorEl.classList.toggle("visible", message !== null);
}

function redraw() {
  drawScene(ctx, scene, canvas.width, canvas.height);
}

function currentSpec(): CurveSpec {
  return specFromState(state);
}

async function refreshSamples(spec: CurveSpec) {
  const { id, signal } = samplesGate.begin();
  try {
    const samples: SamplesResponse = await fetchSamples(spec, 1024, signal);
    if (!samplesGate.isCurrent(id)) return;
    scene.samples = samples;
    showError(null);
    redraw();
  } catch (err) {
    if (!samplesGate.isCurrent(id)) return;
    if (err instanceof ApiError) showError(err.detail);
  }
}

async function refreshSymmetry(spec: CurveSpec) {
  const { id, signal } = symmetryGate.begin();
  try {
    const maxDen = state.mode === "orbit-chain" ? state.maxDenominator : undefined;
    const sym = await fetchSymmetry(spec, maxDen, signal);
    if (!symmetryGate.isCurrent(id)) return;
    badgeEl.textContent = formatOrderBadge(sym);
    badgeEl.classList.remove("none");
  } catch (err) {
    if (!symmetryGate.isCurrent(id)) return;
    if (isNoFiniteSymmetry(err)) {
      badgeEl.textContent = "no finite symmetry";
      badgeEl.classList.add("none");
    } else if (err instanceof ApiError) {
      showError(err.detail);
    }
  }
}

async function refreshArcs(spec: CurveSpec) {
  const { id, signal } = arcsGate.begin();
  try {
    const arcs: ArcsResponse = await fetchArcs(spec, state.values.m, signal);
    if (!arcsGate.isCurrent(id)) return;
    scene.arcs = arcs;
    redraw();
  } catch (err) {
    if (!arcsGate.isCurrent(id)) return;
    if (err instanceof ApiError) showError(err.detail);
  }
}

function refreshNow() {
  const spec = currentSpec();
  void refreshSamples(spec);
  void refreshSymmetry(spec);
  void refreshArcs(spec);
}

const scheduleRefresh = debounce(refreshNow, 50);

function onParameterChange() {
  scene.tracePoints = [];
  scene.overlay = state.overlay;
  scene.m = state.values.m;
  scheduleRefresh();
}

function sliderRow(name: SliderName): HTMLElement {
  const def = SLIDER_DEFS[name];
  const row = document.createElement("label");
  row.className = "slider-row";

  const caption = document.createElement("span");
  caption.textContent = def.label;

  const input = document.createElement("input");
  input.type = "range";
  input.min = String(def.min);
  input.max = String(def.max);
  input.step = String(def.step);
  input.value = String(state.values[name]);

  const readout = document.createElement("output");
  readout.textContent = String(state.values[name]);

  input.addEventListener("input", () => {
    state.values[name] = clampToSlider(name, Number(input.value));
    readout.textContent = String(state.values[name]);
    onParameterChange();
  });

  row.append(caption, input, readout);
  return row;
}

function rebuildControls() {
  controlsEl.replaceChildren();
  for (const name of slidersForMode(state.mode)) {
    controlsEl.append(sliderRow(name));
  }
  controlsEl.append(sliderRow("m"));
  controlsEl.append(sliderRow("speed"));
  const isChain = state.mode === "orbit-chain";
  for (const el of chainOnlyEls) el.classList.toggle("hidden", !isChain);
}

modeSelect.addEventListener("change", () => {
  state.mode = modeSelect.value as Mode;
  rebuildControls();
  onParameterChange();
});

overlaySelect.addEventListener("change", () => {
  state.overlay = overlaySelect.value as Overlay;
  onParameterChange();
});

animateBox.addEventListener("change", () => {
  state.animate = animateBox.checked;
  if (!state.animate) {
    scene.marker = null;
    redraw();
  }
});

traceBox.addEventListener("change", () => {
  state.trace = traceBox.checked;
  scene.tracePoints = [];
  redraw();
});

directionSelect.addEventListener("change", () => {
  state.link2Direction = directionSelect.value === "-1" ? -1 : 1;
  onParameterChange();
});

maxDenInput.addEventListener("change", () => {
  const v = Math.max(1, Math.floor(Number(maxDenInput.value) || 1));
  state.maxDenominator = v;
  maxDenInput.value = String(v);
  onParameterChange();
});

async function runExport(kind: "svg" | "stl") {
  const spec = currentSpec();
  const body: Record<string, unknown> =
    kind === "svg"
      ? { spec, m: state.values.m }
      : { spec, tube_radius: 0.05, around: 16, along: 512 };
  svgButton.disabled = true;
  stlButton.disabled = true;
  try {
    const blob = await exportBlob(kind, body);
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = exportFilename(state, kind);
    a.click();
    URL.revokeObjectURL(a.href);
    showError(null);
  } catch (err) {
    if (err instanceof ApiError) showError(err.detail);
  } finally {
    svgButton.disabled = false;
    stlButton.disabled = false;
  }
}

svgButton.addEventListener("click", () => void runExport("svg"));
stlButton.addEventListener("click", () => void runExport("stl"));

function frame(now: number) {
  const dt = (now - lastFrame) / 1000;
  lastFrame = now;
  if (state.animate && scene.samples && scene.samples.points.length > 1) {
    animPhase = (animPhase + dt * state.values.speed) % 1;
    const points = scene.samples.points;
    const index = Math.min(
      points.length - 1,
      Math.floor(animPhase * (points.length - 1)),
    );
    scene.marker = points[index];
    if (state.trace) {
      scene.tracePoints.push(points[index]);
      if (scene.tracePoints.length > 4096) scene.tracePoints.shift();
    }
    redraw();
  }
  requestAnimationFrame(frame);
}

rebuildControls();
refreshNow();
requestAnimationFrame(frame);
