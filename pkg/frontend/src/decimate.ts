// Min/max bucket decimation for strip charts: cap the point count while
// keeping every spike visible (both extremes of each bucket survive).

export interface Point {
  t: number;
  v: number;
}

export function decimate(points: Point[], maxPoints: number): Point[] {
  if (maxPoints < 2) {
    throw new Error("maxPoints must be at least 2");
  }
  if (points.length <= maxPoints) {
    return points;
  }
  const buckets = Math.floor(maxPoints / 2);
  const out: Point[] = [];
  for (let b = 0; b < buckets; b++) {
    const start = Math.floor((b * points.length) / buckets);
    const end = Math.floor(((b + 1) * points.length) / buckets);
    let lo = points[start]!;
    let hi = points[start]!;
    for (let i = start + 1; i < end; i++) {
      const p = points[i]!;
      if (p.v < lo.v) lo = p;
      if (p.v > hi.v) hi = p;
    }
    if (lo.t <= hi.t) {
      out.push(lo);
      if (hi !== lo) out.push(hi);
    } else {
      out.push(hi);
      out.push(lo);
    }
  }
  return out;
}
