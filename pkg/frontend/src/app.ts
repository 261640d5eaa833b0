// Dashboard assembly: one snapshot pipeline feeding the chart, the
// indicator widgets, and the control panel. Indicators update
// synchronously in the snapshot handler; only canvas redraws are
// deferred to animation frames.

import { StripChart } from "./chart.js";
import { ControlPanel } from "./controls.js";
import {
  GatewayClient,
  SnapshotStream,
  SocketFactory,
  StreamStatus,
} from "./gateway.js";
import { registerToLevel } from "./fixedpoint.js";
import { HR_HIGH_SP, HR_LOW_SP, StateSnapshot } from "./types.js";
import {
  CoverageBar,
  StatusBanner,
  TemporalGauge,
  TrafficLight,
} from "./widgets.js";

function must<T extends Element>(root: ParentNode, selector: string): T {
  const el = root.querySelector<T>(selector);
  if (!el) throw new Error(`missing element ${selector}`);
  return el;
}

export class Dashboard {
  readonly stream: SnapshotStream;
  private readonly chart: StripChart;
  private readonly light: TrafficLight;
  private readonly gauge: TemporalGauge;
  private readonly coverage: CoverageBar;
  private readonly banner: StatusBanner;
  private readonly panel: ControlPanel;
  private readonly simTime: HTMLElement;
  private readonly levelReadout: HTMLElement;
  private readonly registerDump: HTMLElement;
  private drawQueued = false;

  constructor(
    private readonly doc: Document,
    client: GatewayClient,
    streamUrl: string,
    makeSocket?: SocketFactory,
  ) {
    this.chart = new StripChart(must(doc, "#level-chart"));
    this.light = new TrafficLight(must(doc, "#code-light"));
    this.gauge = new TemporalGauge(
      must(doc, "#temporal-fill"),
      must(doc, "#temporal-label"),
    );
    this.coverage = new CoverageBar(
      must(doc, "#coverage-fill"),
      must(doc, "#coverage-label"),
    );
    this.banner = new StatusBanner(must(doc, "#status-banner"));
    this.panel = new ControlPanel(doc, client);
    this.simTime = must(doc, "#sim-time");
    this.levelReadout = must(doc, "#level-readout");
    this.registerDump = must(doc, "#register-dump");

    this.stream = new SnapshotStream(
      streamUrl,
      (snapshot) => this.render(snapshot),
      (status) => this.renderStatus(status),
      makeSocket,
    );

    // Seed the view before the first stream message so a reload shows
    // current state immediately.
    client.state().then(
      (snapshot) => this.render(snapshot),
      (err) => console.error("initial state fetch failed:", err),
    );
    this.stream.start();
  }

  render(snapshot: StateSnapshot): void {
    const hr = snapshot.registers.hr;
    const low = registerToLevel(hr[HR_LOW_SP] ?? 0);
    const high = registerToLevel(hr[HR_HIGH_SP] ?? 0);
    this.chart.push(
      snapshot.sim_time,
      snapshot.reported_level,
      snapshot.true_level,
      low,
      high,
    );
    this.light.update(snapshot.code);
    this.gauge.update(
      snapshot.temporal.diff,
      snapshot.temporal.enrolled_max,
      snapshot.temporal.latched,
    );
    this.coverage.update(snapshot.enrollment_coverage);
    this.panel.applySnapshot(snapshot, this.doc.activeElement);

    this.simTime.textContent = `t = ${snapshot.sim_time.toFixed(1)} s` +
      (snapshot.running ? "" : " (finished)");
    this.levelReadout.textContent =
      `reported ${snapshot.reported_level?.toFixed(2) ?? "-"} / ` +
      `true ${snapshot.true_level.toFixed(2)}`;
    this.registerDump.textContent =
      `IR ${snapshot.registers.ir.join(" ")}  HR ${hr.join(" ")}`;

    this.queueDraw();
  }

  private renderStatus(status: StreamStatus): void {
    this.banner.update(status);
  }

  private queueDraw(): void {
    if (this.drawQueued) return;
    this.drawQueued = true;
    const raf =
      typeof requestAnimationFrame === "function"
        ? requestAnimationFrame
        : (fn: FrameRequestCallback) => setTimeout(() => fn(0), 16);
    raf(() => {
      this.drawQueued = false;
      this.chart.draw();
    });
  }
}

export function bootstrap(
  doc: Document,
  client?: GatewayClient,
  streamUrl?: string,
  makeSocket?: SocketFactory,
): Dashboard {
  const loc = doc.defaultView?.location;
  const wsUrl =
    streamUrl ??
    `${loc?.protocol === "https:" ? "wss" : "ws"}://${loc?.host}/api/stream`;
  return new Dashboard(doc, client ?? new GatewayClient(), wsUrl, makeSocket);
}
