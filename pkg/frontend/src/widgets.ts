// Small display widgets, each owning one DOM subtree. All of them are
// pure functions of the latest snapshot so a reload reproduces the
// exact same view from /api/state.

import { StreamStatus } from "./gateway.js";

export type LightState = "green" | "amber" | "red" | "enroll" | "idle";

export function codePresentation(code: number | null): {
  state: LightState;
  label: string;
} {
  if (code === null) return { state: "idle", label: "no data" };
  if (code & 4) return { state: "enroll", label: `enrolling (code ${code})` };
  switch (code) {
    case 3:
      return { state: "green", label: "authenticated" };
    case 2:
      return { state: "amber", label: "PUF mismatch" };
    case 1:
      return { state: "red", label: "temporal alarm" };
    default:
      return { state: "red", label: `alarm (code ${code})` };
  }
}

export class TrafficLight {
  constructor(private readonly el: HTMLElement) {}

  update(code: number | null): void {
    const { state, label } = codePresentation(code);
    this.el.dataset["state"] = state;
    this.el.textContent = label;
  }
}

export class TemporalGauge {
  constructor(
    private readonly fill: HTMLElement,
    private readonly label: HTMLElement,
  ) {}

  update(diff: number, enrolledMax: number, latched: boolean): void {
    // Full bar sits at 1.5x the enrolled max so the trip point (just
    // past the enrolled max) lands visibly inside the scale.
    const ratio = enrolledMax > 0 ? diff / enrolledMax : diff > 0 ? 1.5 : 0;
    const fraction = Math.min(ratio, 1.5) / 1.5;
    this.fill.style.width = `${(fraction * 100).toFixed(1)}%`;
    this.fill.dataset["latched"] = latched ? "1" : "0";
    this.label.textContent =
      `spread ${diff.toFixed(2)} / enrolled ${enrolledMax.toFixed(2)}` +
      (latched ? " (latched)" : "");
  }
}

export class CoverageBar {
  constructor(
    private readonly fill: HTMLElement,
    private readonly label: HTMLElement,
  ) {}

  update(fraction: number): void {
    const pct = Math.max(0, Math.min(1, fraction)) * 100;
    this.fill.style.width = `${pct.toFixed(1)}%`;
    this.label.textContent = `${pct.toFixed(0)}%`;
  }
}

const STATUS_TEXT: Record<StreamStatus, string> = {
  connecting: "connecting to gateway...",
  live: "",
  stale: "stale data: no snapshot from the gateway",
  disconnected: "connection lost, retrying...",
};

export class StatusBanner {
  constructor(private readonly el: HTMLElement) {}

  update(status: StreamStatus): void {
    this.el.dataset["status"] = status;
    this.el.textContent = STATUS_TEXT[status];
    this.el.hidden = status === "live";
  }
}
