// Canvas strip chart for the level telemetry: reported level, true
// level, and the two setpoints over a sliding sim-time window. History
// is decimated to the pixel budget on every draw, so spikes stay
// visible at any acceleration.

import { decimate, Point } from "./decimate.js";

const WINDOW_S = 120;
const HARD_CAP = 20000;
const Y_MAX = 340; // capacity 300 plus the sensor over-range margin

export class StripChart {
  readonly reported: Point[] = [];
  readonly truth: Point[] = [];
  private lowSp = 0;
  private highSp = 0;

  constructor(
    private readonly canvas: HTMLCanvasElement,
    private readonly windowS: number = WINDOW_S,
  ) {}

  push(
    t: number,
    reported: number | null,
    trueLevel: number,
    lowSp: number,
    highSp: number,
  ): void {
    if (reported !== null) this.reported.push({ t, v: reported });
    this.truth.push({ t, v: trueLevel });
    this.lowSp = lowSp;
    this.highSp = highSp;
    this.evict(t - this.windowS);
  }

  private evict(cutoff: number): void {
    for (const series of [this.reported, this.truth]) {
      while (
        series.length > HARD_CAP ||
        (series.length > 0 && series[0]!.t < cutoff)
      ) {
        series.shift();
      }
    }
  }

  draw(): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    const { width, height } = this.canvas;
    ctx.clearRect(0, 0, width, height);
    if (this.truth.length === 0) return;

    const tEnd = this.truth[this.truth.length - 1]!.t;
    const tStart = Math.max(0, tEnd - this.windowS);
    const tSpan = Math.max(tEnd - tStart, 1e-9);
    const x = (t: number) => ((t - tStart) / tSpan) * width;
    const y = (v: number) => height - (v / Y_MAX) * height;

    ctx.strokeStyle = "#30363d";
    ctx.lineWidth = 1;
    for (let level = 0; level <= 300; level += 100) {
      ctx.beginPath();
      ctx.moveTo(0, y(level));
      ctx.lineTo(width, y(level));
      ctx.stroke();
    }

    ctx.setLineDash([6, 4]);
    for (const [sp, color] of [
      [this.lowSp, "#8b949e"],
      [this.highSp, "#8b949e"],
    ] as const) {
      ctx.strokeStyle = color;
      ctx.beginPath();
      ctx.moveTo(0, y(sp));
      ctx.lineTo(width, y(sp));
      ctx.stroke();
    }
    ctx.setLineDash([]);

    this.drawSeries(ctx, this.truth, "#8b949e", x, y);
    this.drawSeries(ctx, this.reported, "#58a6ff", x, y);
  }

  private drawSeries(
    ctx: CanvasRenderingContext2D,
    series: Point[],
    color: string,
    x: (t: number) => number,
    y: (v: number) => number,
  ): void {
    if (series.length === 0) return;
    const pts = decimate(series, Math.max(2 * this.canvas.width, 2));
    ctx.strokeStyle = color;
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    ctx.moveTo(x(pts[0]!.t), y(pts[0]!.v));
    for (let i = 1; i < pts.length; i++) {
      ctx.lineTo(x(pts[i]!.t), y(pts[i]!.v));
    }
    ctx.stroke();
  }
}
