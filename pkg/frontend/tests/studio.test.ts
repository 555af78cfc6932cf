import { describe, expect, it } from "vitest";

import { ServiceError, type ExportRequest, type PreviewRequest } from "../src/api.js";
import { Studio, parsePreviewArchive, type PreviewService } from "../src/studio.js";
import { buildStoredZip } from "./ziputil.js";

const PNG_STUB = new Uint8Array([137, 80, 78, 71, 13, 10, 26, 10]);

function makeArchive(frameCount: number, fps = 8): ArrayBuffer {
  const members: Array<[string, Uint8Array]> = [];
  for (let i = 0; i < frameCount; i++) {
    members.push([`frame_${String(i).padStart(4, "0")}.png`, new Uint8Array([i])]);
  }
  const meta = { fps, frame_count: frameCount, width: 8, height: 8 };
  members.push(["meta", new TextEncoder().encode(JSON.stringify(meta))]);
  return buildStoredZip(members);
}

interface Pending {
  resolve: (buffer: ArrayBuffer) => void;
  reject: (error: unknown) => void;
  signal: AbortSignal | undefined;
  request: PreviewRequest;
}

class FakeService implements PreviewService {
  pending: Pending[] = [];
  exports: ExportRequest[] = [];

  preview(request: PreviewRequest, signal?: AbortSignal): Promise<ArrayBuffer> {
    return new Promise((resolve, reject) => {
      this.pending.push({ resolve, reject, signal, request });
    });
  }

  exportEntry(request: ExportRequest) {
    this.exports.push(request);
    return Promise.resolve({ bytes: new ArrayBuffer(0), filename: `${request.id ?? "x"}.zip` });
  }
}

function readyStudio(service: PreviewService): Studio {
  const studio = new Studio(service);
  studio.setSprite(PNG_STUB, "ember");
  studio.gesture(24, -24);
  return studio;
}

describe("parsePreviewArchive", () => {
  it("splits frames and meta", () => {
    const clip = parsePreviewArchive(makeArchive(3, 12));
    expect(clip.meta).toEqual({ fps: 12, frame_count: 3, width: 8, height: 8 });
    expect(clip.frames.length).toBe(3);
    expect(Array.from(clip.frames[2]!)).toEqual([2]);
  });

  it("rejects archives without meta", () => {
    const archive = buildStoredZip([["frame_0000.png", new Uint8Array([0])]]);
    expect(() => parsePreviewArchive(archive)).toThrow(/no meta/);
  });

  it("rejects archives missing a frame", () => {
    const meta = new TextEncoder().encode(
      JSON.stringify({ fps: 8, frame_count: 2, width: 8, height: 8 }),
    );
    const archive = buildStoredZip([
      ["frame_0000.png", new Uint8Array([0])],
      ["meta", meta],
    ]);
    expect(() => parsePreviewArchive(archive)).toThrow(/frame_0001/);
  });
});

describe("Studio gating", () => {
  it("needs a sprite and a valid draft to preview", () => {
    const studio = new Studio(new FakeService());
    expect(studio.canPreview).toBe(false);
    studio.setSprite(PNG_STUB, "ember");
    expect(studio.canPreview).toBe(true);
    studio.setFrameCount(0);
    expect(studio.canPreview).toBe(false);
    expect(studio.draftProblems.join()).toMatch(/frame_count/);
  });

  it("needs a class name to export", () => {
    const studio = readyStudio(new FakeService());
    expect(studio.canExport).toBe(true);
    studio.className = "   ";
    expect(studio.canExport).toBe(false);
    void expect(studio.exportArchive()).rejects.toThrow(/class name/);
  });

  it("refuses to preview an invalid draft", async () => {
    const studio = new Studio(new FakeService());
    await expect(studio.refreshPreview()).rejects.toThrow(/no sprite/);
  });
});

describe("Studio preview flow", () => {
  it("caches frames and resets playback", async () => {
    const service = new FakeService();
    const studio = readyStudio(service);
    const promise = studio.refreshPreview();
    service.pending[0]!.resolve(makeArchive(4));
    const clip = await promise;
    expect(clip?.frames.length).toBe(4);
    expect(studio.playbackIndex).toBe(0);
    expect(studio.lastError).toBeNull();
    expect(service.pending[0]!.request.spec.direction).toBe("NE");
  });

  it("aborts the stale request and keeps only the newest result", async () => {
    const service = new FakeService();
    const studio = readyStudio(service);
    const first = studio.refreshPreview();
    studio.gesture(40, 0);
    const second = studio.refreshPreview();
    expect(service.pending[0]!.signal?.aborted).toBe(true);
    expect(service.pending[1]!.signal?.aborted).toBe(false);

    service.pending[1]!.resolve(makeArchive(2));
    expect((await second)?.frames.length).toBe(2);

    // the stale request resolving late must not clobber the newer preview
    service.pending[0]!.resolve(makeArchive(9));
    expect(await first).toBeNull();
    expect(studio.preview?.frames.length).toBe(2);
  });

  it("treats abort rejections as silent", async () => {
    const service = new FakeService();
    const studio = readyStudio(service);
    const first = studio.refreshPreview();
    const second = studio.refreshPreview();
    service.pending[0]!.reject(new DOMException("aborted", "AbortError"));
    service.pending[1]!.resolve(makeArchive(1));
    expect(await first).toBeNull();
    await second;
    expect(studio.lastError).toBeNull();
  });

  it("surfaces failures without losing the draft or the last preview", async () => {
    const service = new FakeService();
    const studio = readyStudio(service);
    const ok = studio.refreshPreview();
    service.pending[0]!.resolve(makeArchive(2));
    await ok;

    const draftBefore = { ...studio.spec };
    const failing = studio.refreshPreview();
    service.pending[1]!.reject(new ServiceError(422, "sprite larger than canvas"));
    expect(await failing).toBeNull();
    expect(studio.lastError).toMatch(/422/);
    expect(studio.spec).toEqual(draftBefore);
    expect(studio.preview?.frames.length).toBe(2);
  });
});

describe("Studio playback", () => {
  async function withClip(frames: number): Promise<Studio> {
    const service = new FakeService();
    const studio = readyStudio(service);
    const promise = studio.refreshPreview();
    service.pending[0]!.resolve(makeArchive(frames));
    await promise;
    return studio;
  }

  it("clamps scrubbing to the frame range", async () => {
    const studio = await withClip(4);
    studio.scrub(99);
    expect(studio.playbackIndex).toBe(3);
    studio.scrub(-5);
    expect(studio.playbackIndex).toBe(0);
  });

  it("advances with wraparound", async () => {
    const studio = await withClip(3);
    studio.advance();
    studio.advance();
    studio.advance();
    expect(studio.playbackIndex).toBe(0);
  });
});

describe("Studio export", () => {
  it("sends the draft with the trimmed class name and chosen id", async () => {
    const service = new FakeService();
    const studio = readyStudio(service);
    studio.className = "  ember  ";
    const result = await studio.exportArchive("take_1");
    expect(result.filename).toBe("take_1.zip");
    expect(service.exports[0]!.class_name).toBe("ember");
    expect(service.exports[0]!.id).toBe("take_1");
    expect(service.exports[0]!.spec).toEqual(studio.spec);
  });

  it("omits the id field when not chosen", async () => {
    const service = new FakeService();
    const studio = readyStudio(service);
    await studio.exportArchive();
    expect("id" in service.exports[0]!).toBe(false);
  });
});
