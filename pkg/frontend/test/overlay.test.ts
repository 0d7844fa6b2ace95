// The rotated-copies overlay should land exactly on the full curve when m
// equals the true symmetry order, and visibly miss for any other m. Both
// sides of the comparison are recorded API responses; the only local work
// is the display transform, same as the canvas path.

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";
import type { ArcsResponse, SamplesResponse } from "../src/api.js";
import {
  bounds,
  fitTransform,
  pixelDiffFraction,
  rasterize,
  rotatePolyline,
} from "../src/raster.js";

const fixture = (name: string) =>
  JSON.parse(readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf-8"));

const SIZE = 200;

const samples = fixture("samples_eq3_6_14_1.json") as SamplesResponse;
const view = fitTransform(bounds([samples.points]), SIZE, SIZE);
const fullRaster = rasterize([samples.points], view, SIZE, SIZE);

function overlayRaster(m: number) {
  const arcs = fixture(`arcs_eq3_6_14_1_m${m}.json`) as ArcsResponse;
  const fundamental = arcs.arcs[0].points;
  const copies = [];
  for (let k = 0; k < m; k++) {
    copies.push(rotatePolyline(fundamental, (2 * Math.PI * k) / m));
  }
  return rasterize(copies, view, SIZE, SIZE);
}

describe("rotated copies overlay", () => {
  it("coincides with the full curve at m = 5 (the true order)", () => {
    const diff = pixelDiffFraction(fullRaster, overlayRaster(5));
    expect(diff).toBeLessThan(0.05);
  });

  it("misses the full curve at m = 7", () => {
    const diff = pixelDiffFraction(fullRaster, overlayRaster(7));
    expect(diff).toBeGreaterThan(0.2);
  });

  it("full curve raster actually covers the canvas", () => {
    expect(fullRaster.count()).toBeGreaterThan(1000);
  });
});
