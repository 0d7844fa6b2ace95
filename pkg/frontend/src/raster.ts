// View-transform plumbing plus a tiny software rasterizer. The browser
// draws through canvas 2d; tests rasterize the same polylines into a bit
// grid so overlay coincidence can be measured without a DOM.

export interface Box {
  minX: number;
  minY: number;
  maxX: number;
  maxY: number;
}

export function bounds(pointLists: number[][][]): Box {
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  for (const list of pointLists) {
    for (const [x, y] of list) {
      if (x < minX) minX = x;
      if (x > maxX) maxX = x;
      if (y < minY) minY = y;
      if (y > maxY) maxY = y;
    }
  }
  if (minX > maxX) throw new Error("bounds of zero points");
  return { minX, minY, maxX, maxY };
}

export interface ViewTransform {
  scale: number;
  offsetX: number;
  offsetY: number;
}

// uniform scale, centered, y up
export function fitTransform(
  box: Box,
  width: number,
  height: number,
  marginFrac = 0.05,
): ViewTransform {
  const spanX = Math.max(box.maxX - box.minX, 1e-9);
  const spanY = Math.max(box.maxY - box.minY, 1e-9);
  const margin = marginFrac * Math.max(spanX, spanY);
  const scale = Math.min(
    width / (spanX + 2 * margin),
    height / (spanY + 2 * margin),
  );
  const cx = (box.minX + box.maxX) / 2;
  const cy = (box.minY + box.maxY) / 2;
  return {
    scale,
    offsetX: width / 2 - cx * scale,
    offsetY: height / 2 + cy * scale,
  };
}

export function toPixel(t: ViewTransform, x: number, y: number): [number, number] {
  return [t.offsetX + x * t.scale, t.offsetY - y * t.scale];
}

export function rotatePoint(p: number[], angle: number): [number, number] {
  const c = Math.cos(angle);
  const s = Math.sin(angle);
  return [c * p[0] - s * p[1], s * p[0] + c * p[1]];
}

export function rotatePolyline(points: number[][], angle: number): number[][] {
  return points.map((p) => rotatePoint(p, angle));
}

export class Raster {
  readonly bits: Uint8Array;

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.bits = new Uint8Array(width * height);
  }

  private set(x: number, y: number) {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    this.bits[y * this.width + x] = 1;
  }

  segment(x0: number, y0: number, x1: number, y1: number) {
    const steps = Math.max(Math.abs(x1 - x0), Math.abs(y1 - y0), 1);
    const n = Math.ceil(steps);
    for (let i = 0; i <= n; i++) {
      const t = i / n;
      this.set(Math.round(x0 + (x1 - x0) * t), Math.round(y0 + (y1 - y0) * t));
    }
  }

  polyline(points: number[][], view: ViewTransform) {
    for (let i = 1; i < points.length; i++) {
      const [ax, ay] = toPixel(view, points[i - 1][0], points[i - 1][1]);
      const [bx, by] = toPixel(view, points[i][0], points[i][1]);
      this.segment(ax, ay, bx, by);
    }
  }

  count(): number {
    let n = 0;
    for (const b of this.bits) n += b;
    return n;
  }
}

export function rasterize(
  pointLists: number[][][],
  view: ViewTransform,
  width: number,
  height: number,
): Raster {
  const raster = new Raster(width, height);
  for (const list of pointLists) raster.polyline(list, view);
  return raster;
}

// fraction of lit cells that the two rasters do not share
export function pixelDiffFraction(a: Raster, b: Raster): number {
  if (a.width !== b.width || a.height !== b.height) {
    throw new Error("raster shapes differ");
  }
  let union = 0;
  let mismatch = 0;
  for (let i = 0; i < a.bits.length; i++) {
    const av = a.bits[i];
    const bv = b.bits[i];
    if (av || bv) union += 1;
    if (av !== bv) mismatch += 1;
  }
  return union === 0 ? 0 : mismatch / union;
}
