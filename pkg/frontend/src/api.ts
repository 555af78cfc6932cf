/**
 * Fetch client for the preview service. The only configuration is the base
 * URL; every payload shape is defined by the service.
 */

import type { MotionSpec } from "./spec.js";

export interface PreviewRequest {
  spec: MotionSpec;
  sprite_png_b64: string;
  canvas?: [number, number];
}

export interface ExportRequest extends PreviewRequest {
  class_name: string;
  id?: string;
}

export interface ExportResult {
  bytes: ArrayBuffer;
  filename: string;
}

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(`service error ${status}: ${detail}`);
  }
}

async function raiseForStatus(response: Response): Promise<void> {
  if (response.ok) return;
  let detail = response.statusText;
  try {
    const body = (await response.json()) as { detail?: string };
    if (typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ServiceError(response.status, detail);
}

export class ServiceClient {
  constructor(readonly baseUrl: string) {}

  private async post(path: string, body: unknown, signal?: AbortSignal): Promise<Response> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
    await raiseForStatus(response);
    return response;
  }

  async health(): Promise<boolean> {
    try {
      const response = await fetch(`${this.baseUrl}/v1/health`);
      return response.ok;
    } catch {
      return false;
    }
  }

  /** Zip of frame PNGs plus the meta sidecar. */
  async preview(request: PreviewRequest, signal?: AbortSignal): Promise<ArrayBuffer> {
    const response = await this.post("/v1/preview", request, signal);
    return response.arrayBuffer();
  }

  /** The control map PNG for a spec. */
  async controlMap(
    request: { spec: MotionSpec; canvas?: [number, number] },
    signal?: AbortSignal,
  ): Promise<ArrayBuffer> {
    const response = await this.post("/v1/control-map", request, signal);
    return response.arrayBuffer();
  }

  /** Dataset-entry archive ready for curated re-import; the server names it. */
  async exportEntry(request: ExportRequest, signal?: AbortSignal): Promise<ExportResult> {
    const response = await this.post("/v1/export", request, signal);
    const disposition = response.headers.get("content-disposition") ?? "";
    const match = /filename="([^"]+)"/.exec(disposition);
    return { bytes: await response.arrayBuffer(), filename: match?.[1] ?? "export.zip" };
  }
}
