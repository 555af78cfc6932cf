/**
 * Browser wiring: binds the studio state to the page. Everything visual
 * (frames, control maps) is fetched from the service; this file only moves
 * bytes between widgets.
 */

import { ServiceClient } from "./api.js";
import { Studio } from "./studio.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("service") ?? "http://127.0.0.1:8000";

const client = new ServiceClient(baseUrl);
const studio = new Studio(client);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

const spriteInput = el<HTMLInputElement>("sprite-input");
const gestureCanvas = el<HTMLCanvasElement>("gesture-canvas");
const playbackImage = el<HTMLImageElement>("playback");
const statusLine = el<HTMLParagraphElement>("status");
const exportButton = el<HTMLButtonElement>("export");
const classNameInput = el<HTMLInputElement>("class-name");
const frameSlider = el<HTMLInputElement>("scrub");

let playbackUrl: string | null = null;
let playbackTimer: number | null = null;

function describeSpec(): string {
  const s = studio.spec;
  const move = s.direction === null ? "static" : `${s.direction} @ ${s.velocity.toFixed(1)} px/f`;
  return `${move}, ${s.scale_mode} (${s.scale_rate}), rot ${s.rotation_rate} deg/f`;
}

function renderStatus(): void {
  const error = studio.lastError === null ? "" : ` | error: ${studio.lastError}`;
  statusLine.textContent = describeSpec() + error;
  exportButton.disabled = !studio.canExport;
}

function showFrame(): void {
  if (studio.preview === null) return;
  const frame = studio.preview.frames[studio.playbackIndex];
  if (frame === undefined) return;
  if (playbackUrl !== null) URL.revokeObjectURL(playbackUrl);
  const buffer = frame.slice().buffer as ArrayBuffer;
  playbackUrl = URL.createObjectURL(new Blob([buffer], { type: "image/png" }));
  playbackImage.src = playbackUrl;
  frameSlider.max = String(studio.preview.meta.frame_count - 1);
  frameSlider.value = String(studio.playbackIndex);
}

function startLoop(): void {
  if (playbackTimer !== null) window.clearInterval(playbackTimer);
  if (studio.preview === null) return;
  const interval = 1000 / studio.preview.meta.fps;
  playbackTimer = window.setInterval(() => {
    studio.advance();
    showFrame();
  }, interval);
}

async function refresh(): Promise<void> {
  renderStatus();
  if (!studio.canPreview) return;
  const clip = await studio.refreshPreview();
  renderStatus();
  if (clip !== null) {
    showFrame();
    startLoop();
  }
}

spriteInput.addEventListener("change", async () => {
  const file = spriteInput.files?.[0];
  if (file === undefined) return;
  const bytes = new Uint8Array(await file.arrayBuffer());
  const stem = file.name.replace(/\.[^.]*$/, "");
  studio.setSprite(bytes, stem);
  classNameInput.value = stem;
  await refresh();
});

classNameInput.addEventListener("input", () => {
  studio.className = classNameInput.value;
  renderStatus();
});

let dragStart: [number, number] | null = null;
gestureCanvas.addEventListener("pointerdown", (event) => {
  dragStart = [event.offsetX, event.offsetY];
});
gestureCanvas.addEventListener("pointerup", async (event) => {
  if (dragStart === null) return;
  const [x0, y0] = dragStart;
  dragStart = null;
  studio.gesture(event.offsetX - x0, event.offsetY - y0);
  await refresh();
});

for (const color of ["green", "blue", "red"]) {
  el<HTMLButtonElement>(`scale-${color}`).addEventListener("click", async () => {
    studio.pickScaleColor(color);
    await refresh();
  });
}

frameSlider.addEventListener("input", () => {
  if (playbackTimer !== null) window.clearInterval(playbackTimer);
  studio.scrub(Number(frameSlider.value));
  showFrame();
});

exportButton.addEventListener("click", async () => {
  try {
    const result = await studio.exportArchive();
    const anchor = document.createElement("a");
    anchor.href = URL.createObjectURL(new Blob([result.bytes], { type: "application/zip" }));
    anchor.download = result.filename;
    anchor.click();
    URL.revokeObjectURL(anchor.href);
  } catch (error) {
    studio.lastError = error instanceof Error ? error.message : String(error);
    renderStatus();
  }
});

void client.health().then((ok) => {
  if (!ok) {
    statusLine.textContent = `service unreachable at ${baseUrl}`;
  }
});
renderStatus();
