// Wire types for the gateway REST/WS surface. parseSnapshot is the only
// entry point for untyped JSON; everything downstream trusts its output.

export interface TemporalState {
  diff: number;
  enrolled_max: number;
  latched: boolean;
}

export interface RegisterBlock {
  ir: number[];
  hr: number[];
}

export interface StateSnapshot {
  sim_time: number;
  true_level: number;
  reported_level: number | null;
  registers: RegisterBlock;
  code: number | null;
  temporal: TemporalState;
  enrollment_coverage: number;
  running: boolean;
}

export type FaultKind = "spike" | "hardover_pos" | "hardover_neg" | "trojan";

export const FAULT_KINDS: FaultKind[] = [
  "spike",
  "hardover_pos",
  "hardover_neg",
  "trojan",
];

function asNumber(value: unknown, name: string): number {
  if (typeof value !== "number" || !Number.isFinite(value)) {
    throw new Error(`snapshot field ${name} is not a finite number`);
  }
  return value;
}

function asNumberArray(value: unknown, name: string): number[] {
  if (!Array.isArray(value) || value.some((v) => typeof v !== "number")) {
    throw new Error(`snapshot field ${name} is not a number array`);
  }
  return value as number[];
}

export function parseSnapshot(raw: unknown): StateSnapshot {
  if (typeof raw !== "object" || raw === null) {
    throw new Error("snapshot is not an object");
  }
  const doc = raw as Record<string, unknown>;
  const registers = doc["registers"] as Record<string, unknown> | undefined;
  const temporal = doc["temporal"] as Record<string, unknown> | undefined;
  if (!registers || !temporal) {
    throw new Error("snapshot is missing registers or temporal");
  }

  const code = doc["code"] === null ? null : asNumber(doc["code"], "code");
  if (code !== null && (code < 0 || code > 7 || !Number.isInteger(code))) {
    throw new Error(`snapshot code ${code} outside 0..7`);
  }
  const trueLevel = asNumber(doc["true_level"], "true_level");
  const reported =
    doc["reported_level"] === null || doc["reported_level"] === undefined
      ? null
      : asNumber(doc["reported_level"], "reported_level");
  if (trueLevel < 0 || (reported !== null && reported < 0)) {
    throw new Error("snapshot level is negative");
  }

  return {
    sim_time: asNumber(doc["sim_time"], "sim_time"),
    true_level: trueLevel,
    reported_level: reported,
    registers: {
      ir: asNumberArray(registers["ir"], "registers.ir"),
      hr: asNumberArray(registers["hr"], "registers.hr"),
    },
    code,
    temporal: {
      diff: asNumber(temporal["diff"], "temporal.diff"),
      enrolled_max: asNumber(temporal["enrolled_max"], "temporal.enrolled_max"),
      latched: Boolean(temporal["latched"]),
    },
    enrollment_coverage: asNumber(
      doc["enrollment_coverage"],
      "enrollment_coverage",
    ),
    running: Boolean(doc["running"]),
  };
}

// Holding register addresses, mirrored from the gateway's register map.
export const HR_LOW_SP = 0;
export const HR_HIGH_SP = 1;
export const HR_DRAIN = 2;
export const HR_MODE = 3;
export const HR_ENROLL = 4;
export const HR_CODE = 6;
export const HR_FILL_MANUAL = 7;

export const MODE_MANUAL = 0;
export const MODE_AUTO = 1;
