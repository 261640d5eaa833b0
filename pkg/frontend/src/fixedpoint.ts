// Levels and setpoints cross the wire as uint16 fixed point, value x100.

export const SCALE = 100;

export function levelToRegister(level: number): number {
  if (!Number.isFinite(level) || level < 0) {
    throw new Error(`level ${level} not encodable`);
  }
  const raw = Math.round(level * SCALE);
  if (raw > 0xffff) {
    throw new Error(`level ${level} overflows the register`);
  }
  return raw;
}

export function registerToLevel(raw: number): number {
  return raw / SCALE;
}
