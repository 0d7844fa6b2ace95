import type { ArcsResponse, SamplesResponse } from "./api.js";
import type { Overlay } from "./state.js";
import { bounds, fitTransform, rotatePolyline, toPixel, ViewTransform } from "./raster.js";

// same 12 colors the SVG exporter cycles through, so screen and file agree
export const PALETTE = [
  "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4",
  "#f032e6", "#bfef45", "#469990", "#9a6324", "#800000", "#000075",
];

export interface Scene {
  samples: SamplesResponse | null;
  arcs: ArcsResponse | null;
  overlay: Overlay;
  m: number;
  tracePoints: number[][];
  marker: number[] | null;
}

function strokePolyline(
  ctx: CanvasRenderingContext2D,
  points: number[][],
  view: ViewTransform,
  color: string,
  width: number,
) {
  if (points.length < 2) return;
  ctx.strokeStyle = color;
  ctx.lineWidth = width;
  ctx.beginPath();
  const [x0, y0] = toPixel(view, points[0][0], points[0][1]);
  ctx.moveTo(x0, y0);
  for (let i = 1; i < points.length; i++) {
    const [x, y] = toPixel(view, points[i][0], points[i][1]);
    ctx.lineTo(x, y);
  }
  ctx.stroke();
}

export function sceneViewTransform(
  scene: Scene,
  width: number,
  height: number,
): ViewTransform | null {
  const lists: number[][][] = [];
  if (scene.samples) lists.push(scene.samples.points);
  if (scene.arcs) for (const arc of scene.arcs.arcs) lists.push(arc.points);
  if (lists.length === 0) return null;
  return fitTransform(bounds(lists), width, height);
}

export function drawScene(
  ctx: CanvasRenderingContext2D,
  scene: Scene,
  width: number,
  height: number,
) {
  ctx.clearRect(0, 0, width, height);
  const view = sceneViewTransform(scene, width, height);
  if (view === null) return;

  if (scene.overlay === "full" || scene.samples === null) {
    if (scene.arcs) {
      for (const arc of scene.arcs.arcs) {
        strokePolyline(
          ctx, arc.points, view, PALETTE[arc.color_index % PALETTE.length], 1.6,
        );
      }
    } else if (scene.samples) {
      strokePolyline(ctx, scene.samples.points, view, PALETTE[2], 1.6);
    }
  } else {
    // ghost of the full curve under both arc overlays
    strokePolyline(ctx, scene.samples.points, view, "#c8c8d0", 1.0);
    const fundamental = scene.arcs?.arcs[0];
    if (fundamental) {
      if (scene.overlay === "fundamental-arc") {
        strokePolyline(ctx, fundamental.points, view, PALETTE[0], 2.2);
      } else {
        for (let k = 0; k < scene.m; k++) {
          const copy = rotatePolyline(
            fundamental.points, (2 * Math.PI * k) / scene.m,
          );
          strokePolyline(ctx, copy, view, PALETTE[k % PALETTE.length], 1.6);
        }
      }
    }
  }

  if (scene.tracePoints.length > 1) {
    strokePolyline(ctx, scene.tracePoints, view, "#1a1a1a", 2.4);
  }

  if (scene.marker) {
    const [mx, my] = toPixel(view, scene.marker[0], scene.marker[1]);
    ctx.fillStyle = "#1a1a1a";
    ctx.beginPath();
    ctx.arc(mx, my, 5, 0, 2 * Math.PI);
    ctx.fill();
  }
}
