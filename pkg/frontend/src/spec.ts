/**
 * Motion spec model shared with the service, plus the gesture mapping.
 *
 * Field names match the wire format, so a Spec object is exactly what the
 * service expects under `spec`. Validation mirrors the server rules; the UI
 * never sends a spec the service would reject.
 */

export const HEADINGS = ["E", "NE", "N", "NW", "W", "SW", "S", "SE"] as const;
export type Direction = (typeof HEADINGS)[number];

export const SCALE_MODES = ["grow", "stable", "shrink"] as const;
export type ScaleMode = (typeof SCALE_MODES)[number];

export interface MotionSpec {
  direction: Direction | null;
  velocity: number;
  scale_mode: ScaleMode;
  scale_rate: number;
  rotation_rate: number;
  frame_count: number;
}

/** Service-side limits the client must respect. */
export const MAX_FRAME_COUNT = 64;
export const MAX_CANVAS_SIDE = 1024;

/** Drags shorter than the minimum rendered arrow carry no direction. */
export const MIN_DRAG_PX = 12;

/** Arrow length is 8 px per unit of velocity on its linear segment. */
export const PX_PER_VELOCITY = 8;

export const SCALE_COLOR_TO_MODE: Record<string, ScaleMode> = {
  green: "grow",
  blue: "stable",
  red: "shrink",
};

export const DEFAULT_SCALE_RATE: Record<ScaleMode, number> = {
  grow: 1.05,
  stable: 1.0,
  shrink: 0.95,
};

export const DEFAULT_SPEC: MotionSpec = {
  direction: null,
  velocity: 0,
  scale_mode: "stable",
  scale_rate: 1.0,
  rotation_rate: 0,
  frame_count: 16,
};

/**
 * Snap a counterclockwise-from-East gesture angle to one of 8 headings.
 *
 * Gestures use floor sectors [k*45, (k+1)*45): 44 degrees is still East,
 * 46 degrees is already Northeast, and the 22.5 degree tie lands on East.
 */
export function snapGestureAngle(angleDeg: number): Direction {
  const normalized = ((angleDeg % 360) + 360) % 360;
  const sector = Math.floor(normalized / 45) % 8;
  return HEADINGS[sector]!;
}

export interface GestureMotion {
  direction: Direction | null;
  velocity: number;
}

/**
 * Map a drag vector in screen pixels (y grows down) to direction + velocity.
 * Sub-threshold drags mean "no translation".
 */
export function gestureToMotion(dx: number, dy: number): GestureMotion {
  const length = Math.hypot(dx, dy);
  if (length < MIN_DRAG_PX) {
    return { direction: null, velocity: 0 };
  }
  const angleDeg = (Math.atan2(-dy, dx) * 180) / Math.PI;
  return { direction: snapGestureAngle(angleDeg), velocity: length / PX_PER_VELOCITY };
}

export function applyGesture(spec: MotionSpec, dx: number, dy: number): MotionSpec {
  const motion = gestureToMotion(dx, dy);
  return { ...spec, direction: motion.direction, velocity: motion.velocity };
}

export function applyScaleColor(spec: MotionSpec, color: string): MotionSpec {
  const mode = SCALE_COLOR_TO_MODE[color];
  if (mode === undefined) {
    throw new Error(`unknown scale color: ${color}`);
  }
  return { ...spec, scale_mode: mode, scale_rate: DEFAULT_SCALE_RATE[mode] };
}

/** All rule violations, empty when the spec is valid. Mirrors server checks. */
export function specProblems(spec: MotionSpec): string[] {
  const problems: string[] = [];
  if (spec.direction !== null && !HEADINGS.includes(spec.direction)) {
    problems.push(`unknown direction ${spec.direction}`);
  }
  if (spec.velocity < 0 || !Number.isFinite(spec.velocity)) {
    problems.push(`velocity must be >= 0, got ${spec.velocity}`);
  }
  if (spec.direction === null && spec.velocity !== 0) {
    problems.push("direction null requires velocity 0");
  }
  if (!SCALE_MODES.includes(spec.scale_mode)) {
    problems.push(`unknown scale_mode ${spec.scale_mode}`);
  } else if (spec.scale_rate <= 0 || !Number.isFinite(spec.scale_rate)) {
    problems.push(`scale_rate must be > 0, got ${spec.scale_rate}`);
  } else if (spec.scale_mode === "grow" && !(spec.scale_rate > 1)) {
    problems.push("grow requires scale_rate > 1");
  } else if (spec.scale_mode === "stable" && spec.scale_rate !== 1) {
    problems.push("stable requires scale_rate = 1");
  } else if (spec.scale_mode === "shrink" && !(spec.scale_rate < 1)) {
    problems.push("shrink requires scale_rate < 1");
  }
  if (!Number.isFinite(spec.rotation_rate)) {
    problems.push("rotation_rate must be finite");
  }
  if (!Number.isInteger(spec.frame_count) || spec.frame_count < 1) {
    problems.push(`frame_count must be an integer >= 1, got ${spec.frame_count}`);
  } else if (spec.frame_count > MAX_FRAME_COUNT) {
    problems.push(`frame_count ${spec.frame_count} exceeds service limit ${MAX_FRAME_COUNT}`);
  }
  return problems;
}

export function isValidSpec(spec: MotionSpec): boolean {
  return specProblems(spec).length === 0;
}
