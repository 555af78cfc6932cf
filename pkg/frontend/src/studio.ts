/**
 * Authoring state for one editing session.
 *
 * Holds the uploaded sprite, the draft spec, and the cached preview. All
 * pixel rendering comes from the service; the studio only decides when to
 * ask for it. At most one preview request is in flight: a newer gesture
 * aborts the stale request before issuing its own.
 */

import type { ExportResult, PreviewRequest, ServiceClient } from "./api.js";
import { zipEntryMap } from "./zip.js";
import {
  DEFAULT_SPEC,
  applyGesture,
  applyScaleColor,
  isValidSpec,
  specProblems,
  type MotionSpec,
} from "./spec.js";

export interface ClipMeta {
  fps: number;
  frame_count: number;
  width: number;
  height: number;
}

export interface PreviewClip {
  frames: Uint8Array[];
  meta: ClipMeta;
}

/** The client surface the studio needs; narrowed for tests. */
export type PreviewService = Pick<ServiceClient, "preview" | "exportEntry">;

function encodeBase64(bytes: Uint8Array): string {
  let binary = "";
  const chunk = 0x8000;
  for (let i = 0; i < bytes.length; i += chunk) {
    binary += String.fromCharCode(...bytes.subarray(i, i + chunk));
  }
  return btoa(binary);
}

export function parsePreviewArchive(buffer: ArrayBuffer): PreviewClip {
  const entries = zipEntryMap(buffer);
  const metaBytes = entries.get("meta");
  if (metaBytes === undefined) {
    throw new Error("preview archive has no meta member");
  }
  const meta = JSON.parse(new TextDecoder().decode(metaBytes)) as ClipMeta;
  const frames: Uint8Array[] = [];
  for (let i = 0; i < meta.frame_count; i++) {
    const name = `frame_${String(i).padStart(4, "0")}.png`;
    const frame = entries.get(name);
    if (frame === undefined) {
      throw new Error(`preview archive is missing ${name}`);
    }
    frames.push(frame);
  }
  return { frames, meta };
}

export class Studio {
  spec: MotionSpec = { ...DEFAULT_SPEC };
  className = "";
  preview: PreviewClip | null = null;
  playbackIndex = 0;
  lastError: string | null = null;

  private spriteB64: string | null = null;
  private inflight: AbortController | null = null;
  private requestSeq = 0;

  constructor(
    private readonly client: PreviewService,
    readonly canvas: [number, number] = [256, 256],
  ) {}

  get hasSprite(): boolean {
    return this.spriteB64 !== null;
  }

  setSprite(pngBytes: Uint8Array, className: string): void {
    this.spriteB64 = encodeBase64(pngBytes);
    this.className = className;
    this.preview = null;
    this.playbackIndex = 0;
  }

  /** Drag vector in canvas pixels, y growing down. */
  gesture(dx: number, dy: number): void {
    this.spec = applyGesture(this.spec, dx, dy);
  }

  pickScaleColor(color: string): void {
    this.spec = applyScaleColor(this.spec, color);
  }

  setRotation(rate: number): void {
    this.spec = { ...this.spec, rotation_rate: rate };
  }

  setFrameCount(count: number): void {
    this.spec = { ...this.spec, frame_count: count };
  }

  get draftProblems(): string[] {
    return specProblems(this.spec);
  }

  get canPreview(): boolean {
    return this.hasSprite && isValidSpec(this.spec);
  }

  get canExport(): boolean {
    return this.canPreview && this.className.trim().length > 0;
  }

  private buildRequest(): PreviewRequest {
    if (this.spriteB64 === null) {
      throw new Error("no sprite loaded");
    }
    return { spec: this.spec, sprite_png_b64: this.spriteB64, canvas: this.canvas };
  }

  /**
   * Fetch frames for the current draft. Stale requests are aborted and their
   * outcome discarded; failures surface in lastError with the draft intact.
   */
  async refreshPreview(): Promise<PreviewClip | null> {
    if (!this.canPreview) {
      throw new Error(`cannot preview: ${this.draftProblems.join("; ") || "no sprite"}`);
    }
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    const seq = ++this.requestSeq;
    try {
      const buffer = await this.client.preview(this.buildRequest(), controller.signal);
      if (seq !== this.requestSeq) {
        return null; // a newer request superseded this one
      }
      this.preview = parsePreviewArchive(buffer);
      this.playbackIndex = 0;
      this.lastError = null;
      return this.preview;
    } catch (error) {
      if (controller.signal.aborted || seq !== this.requestSeq) {
        return null;
      }
      this.lastError = error instanceof Error ? error.message : String(error);
      return null;
    } finally {
      if (this.inflight === controller) {
        this.inflight = null;
      }
    }
  }

  scrub(index: number): void {
    if (this.preview === null) return;
    const count = this.preview.meta.frame_count;
    this.playbackIndex = Math.min(Math.max(index, 0), count - 1);
  }

  advance(): void {
    if (this.preview === null) return;
    this.playbackIndex = (this.playbackIndex + 1) % this.preview.meta.frame_count;
  }

  async exportArchive(entryId?: string): Promise<ExportResult> {
    if (!this.canExport) {
      throw new Error("export needs a sprite, a valid spec, and a class name");
    }
    return this.client.exportEntry({
      ...this.buildRequest(),
      class_name: this.className.trim(),
      ...(entryId === undefined ? {} : { id: entryId }),
    });
  }
}
