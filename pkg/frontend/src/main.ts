/**
 * Browser demo shell: loads the exported assets, wires the on-screen
 * and physical keyboards into the composition automaton, paints the
 * composed blocks from the glyph atlas, and exports the session log.
 *
 * All composition logic lives in the imported core modules; this file
 * only touches the DOM.
 */

import { SILENT, SyllableBlock, parseTokenAtom, tokenAtom } from "./jamo.js";
import { GlyphAtlas, assembleAtlas, parseAtlasIndex } from "./atlas.js";
import { CONTROL_EMITS, EDIT_CODES, KeyEvent, KeyboardLayout, loadLayout } from "./layout.js";
import { Bitmap, getPixel } from "./pbm.js";
import { renderPage } from "./render.js";
import { INITIAL, TypingState, displayText, step, writeSessionLog } from "./session.js";

interface Profile {
  id: string;
  interpretations: Record<string, string>;
  options: Record<string, string>;
}

interface Demo {
  layout: KeyboardLayout;
  atlas: GlyphAtlas;
  profiles: Profile[];
  typing: TypingState;
  log: KeyEvent[];
  started: number;
  shiftHeld: boolean;
}

const KEY_ROWS: string[][] = [
  ["Digit1", "Digit2", "Digit3", "Digit4", "Digit5"],
  ["KeyQ", "KeyW", "KeyE", "KeyR", "KeyT", "KeyY", "KeyU", "KeyI", "KeyO", "KeyP"],
  ["KeyA", "KeyS", "KeyD", "KeyF", "KeyG", "KeyH", "KeyJ", "KeyK", "KeyL"],
  ["KeyZ", "KeyX", "KeyC", "KeyV", "KeyB", "KeyN", "KeyM"],
  ["Backspace", "Space"],
];

const SCALE = 6;

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

async function fetchBytes(url: string): Promise<Uint8Array> {
  const res = await fetch(url);
  if (!res.ok) throw new Error(`${url}: HTTP ${res.status}`);
  return new Uint8Array(await res.arrayBuffer());
}

async function fetchText(url: string): Promise<string> {
  const res = await fetch(url);
  if (!res.ok) throw new Error(`${url}: HTTP ${res.status}`);
  return res.text();
}

async function loadAssets(base: string): Promise<Demo> {
  const layout = loadLayout(await fetchText(`${base}/layout.json`));
  const index = parseAtlasIndex(await fetchText(`${base}/atlas/atlas.json`));
  const files = new Map<string, Uint8Array>();
  await Promise.all(
    [...new Set(index.values())].map(async (name) => {
      try {
        files.set(name, await fetchBytes(`${base}/atlas/${name}`));
      } catch {
        // assembleAtlas reports it as missing
      }
    }),
  );
  const { atlas, missing } = assembleAtlas(index, files);
  if (missing.length) {
    byId("status").textContent = `missing glyphs: ${missing.join(", ")}`;
  }
  let profiles: Profile[] = [];
  try {
    profiles = JSON.parse(await fetchText(`${base}/profiles.json`)).profiles ?? [];
  } catch {
    byId("status").textContent = "profiles.json failed to load";
  }
  return {
    layout, atlas, profiles,
    typing: INITIAL, log: [], started: performance.now(), shiftHeld: false,
  };
}

/** Paint one glyph bitmap onto a canvas, nearest-neighbor via raw pixels. */
function paintBitmap(canvas: HTMLCanvasElement, page: Bitmap, scale: number): void {
  canvas.width = Math.max(1, page.width * scale);
  canvas.height = Math.max(1, page.height * scale);
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.fillStyle = "#fdfdf6";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  ctx.fillStyle = "#1a1a1a";
  for (let r = 0; r < page.height; r++) {
    for (let c = 0; c < page.width; c++) {
      if (getPixel(page, r, c)) {
        ctx.fillRect(c * scale, r * scale, scale, scale);
      }
    }
  }
}

function keycapLabel(emit: string): string {
  if (emit === "@rhotic") return "rho";
  if (emit.startsWith("@tone")) return `tone ${emit.slice(-1)}`;
  return emit;
}

/** A tiny canvas showing the atlas glyph for a jamo emit, if it has one. */
function keycapGlyph(demo: Demo, emit: string): HTMLCanvasElement | null {
  if (CONTROL_EMITS.has(emit)) return null;
  let key: string;
  try {
    const token = parseTokenAtom(emit, emit === "_" ? "nucleus" : "onset");
    key = token.base === SILENT ? SILENT : tokenAtom(token);
  } catch {
    try {
      key = tokenAtom(parseTokenAtom(emit, "nucleus"));
    } catch {
      return null;
    }
  }
  const glyph = demo.atlas.glyphs.get(key);
  if (!glyph) return null;
  const canvas = document.createElement("canvas");
  canvas.className = "cap-glyph";
  paintBitmap(canvas, glyph, 2);
  return canvas;
}

function buildKeyboard(demo: Demo): void {
  const board = byId<HTMLDivElement>("keyboard");
  board.textContent = "";
  for (const row of KEY_ROWS) {
    const div = document.createElement("div");
    div.className = "key-row";
    for (const code of row) {
      const button = document.createElement("button");
      button.className = "key";
      button.dataset.code = code;
      if (EDIT_CODES.has(code)) {
        button.classList.add("key-wide");
        button.textContent = code;
      }
      button.addEventListener("click", () => {
        press(demo, code, demo.shiftHeld);
      });
      div.appendChild(button);
    }
    board.appendChild(div);
  }
  relabel(demo);
}

/** Relabel every keycap for the active layer; Shift shows the modified glyphs. */
function relabel(demo: Demo): void {
  for (const button of document.querySelectorAll<HTMLButtonElement>(".key")) {
    const code = button.dataset.code ?? "";
    if (EDIT_CODES.has(code)) continue;
    button.textContent = "";
    if (!demo.layout.hasKey(code, demo.shiftHeld)) {
      button.classList.add("key-dead");
      continue;
    }
    button.classList.remove("key-dead");
    const emit = demo.layout.emitFor(code, demo.shiftHeld);
    const glyph = keycapGlyph(demo, emit);
    if (glyph) button.appendChild(glyph);
    const label = document.createElement("span");
    label.textContent = keycapLabel(emit);
    button.appendChild(label);
  }
}

function flash(message: string): void {
  const status = byId("status");
  status.textContent = message;
  status.classList.remove("flash");
  // restart the CSS animation
  void (status as HTMLElement).offsetWidth;
  status.classList.add("flash");
}

function visibleWords(typing: TypingState): SyllableBlock[][] {
  const final = [...typing.state.emitted];
  const done = typing.state.completed();
  if (done) final.push(done);
  const words = typing.words.map((w) => [...w]);
  if (final.length) words.push(final);
  return words;
}

function repaint(demo: Demo): void {
  byId("tokens").textContent = displayText(demo.typing) || "(empty)";
  const page = renderPage(visibleWords(demo.typing), demo.atlas);
  paintBitmap(byId<HTMLCanvasElement>("page"), page, SCALE);
  const pendingAtoms = demo.typing.state.pendingTokens().map(tokenAtom);
  byId("pending").textContent =
    pendingAtoms.length ? `pending: ${pendingAtoms.join(" + ")}` : "";
}

function press(demo: Demo, code: string, shift: boolean): void {
  const event: KeyEvent = {
    code, shift,
    t: Math.round(performance.now() - demo.started) / 1000,
  };
  try {
    demo.typing = step(demo.typing, event, demo.layout);
  } catch (exc) {
    flash(exc instanceof Error ? exc.message : String(exc));
    return;
  }
  demo.log.push(event);
  byId("status").textContent = "";
  repaint(demo);
}

function exportLog(demo: Demo): void {
  const blob = new Blob([writeSessionLog(demo.log)], { type: "application/jsonl" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = "session.jsonl";
  anchor.click();
  URL.revokeObjectURL(url);
}

function showProfile(demo: Demo, id: string): void {
  const profile = demo.profiles.find((p) => p.id === id);
  const list = byId<HTMLDListElement>("interpretations");
  list.textContent = "";
  if (!profile) return;
  for (const [atom, reading] of Object.entries(profile.interpretations)) {
    const dt = document.createElement("dt");
    dt.textContent = atom;
    const dd = document.createElement("dd");
    dd.textContent = reading;
    list.append(dt, dd);
  }
}

function wireProfiles(demo: Demo): void {
  const select = byId<HTMLSelectElement>("profile");
  select.textContent = "";
  for (const profile of demo.profiles) {
    const option = document.createElement("option");
    option.value = profile.id;
    option.textContent = profile.id;
    select.appendChild(option);
  }
  select.addEventListener("change", () => showProfile(demo, select.value));
  if (demo.profiles.length) showProfile(demo, demo.profiles[0].id);
}

function wirePhysicalKeys(demo: Demo): void {
  document.addEventListener("keydown", (ev) => {
    if (ev.key === "Shift") {
      demo.shiftHeld = true;
      relabel(demo);
      return;
    }
    if (!EDIT_CODES.has(ev.code) && !demo.layout.hasKey(ev.code, ev.shiftKey)) {
      return; // let unrelated keys (F5, etc.) through
    }
    ev.preventDefault();
    press(demo, ev.code, ev.shiftKey);
  });
  document.addEventListener("keyup", (ev) => {
    if (ev.key === "Shift") {
      demo.shiftHeld = false;
      relabel(demo);
    }
  });
}

async function start(): Promise<void> {
  let demo: Demo;
  try {
    demo = await loadAssets("./public/assets");
  } catch (exc) {
    byId("status").textContent =
      `assets failed to load: ${exc instanceof Error ? exc.message : exc}`;
    return;
  }
  byId("layout-name").textContent = `${demo.layout.id} v${demo.layout.version}`;
  buildKeyboard(demo);
  wireProfiles(demo);
  wirePhysicalKeys(demo);
  byId("export").addEventListener("click", () => exportLog(demo));
  byId("reset").addEventListener("click", () => {
    demo.typing = INITIAL;
    demo.log = [];
    demo.started = performance.now();
    byId("status").textContent = "";
    repaint(demo);
  });
  repaint(demo);
}

start();
