// Operator controls. Every handler maps to exactly one documented
// gateway endpoint; results and rejections land in the per-card status
// line next to the control that fired them.

import { GatewayClient } from "./gateway.js";
import { registerToLevel } from "./fixedpoint.js";
import {
  FaultKind,
  HR_DRAIN,
  HR_ENROLL,
  HR_FILL_MANUAL,
  HR_HIGH_SP,
  HR_LOW_SP,
  HR_MODE,
  StateSnapshot,
} from "./types.js";

function must<T extends Element>(root: ParentNode, selector: string): T {
  const el = root.querySelector<T>(selector);
  if (!el) throw new Error(`missing element ${selector}`);
  return el;
}

function runReporting(status: HTMLElement, work: () => Promise<void>): void {
  status.textContent = "...";
  status.dataset["kind"] = "pending";
  work().then(
    () => {
      status.textContent = "applied";
      status.dataset["kind"] = "ok";
    },
    (err: unknown) => {
      status.textContent = err instanceof Error ? err.message : String(err);
      status.dataset["kind"] = "error";
    },
  );
}

export class ControlPanel {
  private readonly spLow: HTMLInputElement;
  private readonly spHigh: HTMLInputElement;
  private readonly spStatus: HTMLElement;
  private readonly modeAuto: HTMLInputElement;
  private readonly drainOpen: HTMLInputElement;
  private readonly fillManual: HTMLInputElement;
  private readonly valveStatus: HTMLElement;
  private readonly enrollToggle: HTMLInputElement;
  private readonly enrollStatus: HTMLElement;
  private readonly injectKind: HTMLSelectElement;
  private readonly injectDuration: HTMLInputElement;
  private readonly injectMagnitude: HTMLInputElement;
  private readonly injectStatus: HTMLElement;

  constructor(
    root: ParentNode,
    private readonly client: GatewayClient,
  ) {
    this.spLow = must(root, "#sp-low");
    this.spHigh = must(root, "#sp-high");
    this.spStatus = must(root, "#sp-status");
    this.modeAuto = must(root, "#mode-auto");
    this.drainOpen = must(root, "#drain-open");
    this.fillManual = must(root, "#fill-manual");
    this.valveStatus = must(root, "#valve-status");
    this.enrollToggle = must(root, "#enroll-toggle");
    this.enrollStatus = must(root, "#enroll-status");
    this.injectKind = must(root, "#inject-kind");
    this.injectDuration = must(root, "#inject-duration");
    this.injectMagnitude = must(root, "#inject-magnitude");
    this.injectStatus = must(root, "#inject-status");

    must<HTMLButtonElement>(root, "#sp-apply").addEventListener("click", () =>
      this.applySetpoints(),
    );
    must<HTMLButtonElement>(root, "#reset-alarm").addEventListener(
      "click",
      () =>
        runReporting(this.valveStatus, () => this.client.resetTemporal()),
    );
    must<HTMLButtonElement>(root, "#inject-fire").addEventListener(
      "click",
      () => this.fireInjection(),
    );
    this.modeAuto.addEventListener("change", () =>
      runReporting(this.valveStatus, () =>
        this.client.setMode(this.modeAuto.checked),
      ),
    );
    this.drainOpen.addEventListener("change", () =>
      runReporting(this.valveStatus, () =>
        this.client.setDrain(this.drainOpen.checked),
      ),
    );
    this.fillManual.addEventListener("change", () =>
      runReporting(this.valveStatus, () =>
        this.client.setManualFill(this.fillManual.checked),
      ),
    );
    this.enrollToggle.addEventListener("change", () =>
      runReporting(this.enrollStatus, () =>
        this.client.setEnroll(this.enrollToggle.checked),
      ),
    );
  }

  private applySetpoints(): void {
    const low = Number(this.spLow.value);
    const high = Number(this.spHigh.value);
    runReporting(this.spStatus, async () => {
      if (!(low >= 0) || !(high > low)) {
        throw new Error("need 0 <= low < high");
      }
      await this.client.setSetpoints(low, high);
    });
  }

  private fireInjection(): void {
    const kind = this.injectKind.value as FaultKind;
    const duration = Number(this.injectDuration.value);
    const magnitude = Number(this.injectMagnitude.value);
    runReporting(this.injectStatus, () =>
      this.client.inject(kind, duration, magnitude),
    );
  }

  // Reflect wire truth back into the toggles so a reload (or another
  // operator's writes) cannot leave the panel lying about plant state.
  applySnapshot(snapshot: StateSnapshot, active: Element | null): void {
    const hr = snapshot.registers.hr;
    const syncCheckbox = (box: HTMLInputElement, value: number | undefined) => {
      if (active !== box && value !== undefined) box.checked = value !== 0;
    };
    syncCheckbox(this.modeAuto, hr[HR_MODE]);
    syncCheckbox(this.drainOpen, hr[HR_DRAIN]);
    syncCheckbox(this.fillManual, hr[HR_FILL_MANUAL]);
    syncCheckbox(this.enrollToggle, hr[HR_ENROLL]);
    const low = hr[HR_LOW_SP];
    const high = hr[HR_HIGH_SP];
    if (active !== this.spLow && low !== undefined) {
      this.spLow.placeholder = registerToLevel(low).toFixed(2);
    }
    if (active !== this.spHigh && high !== undefined) {
      this.spHigh.placeholder = registerToLevel(high).toFixed(2);
    }
  }
}
