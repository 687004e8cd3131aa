import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { LayoutError, loadLayout } from "../src/layout.js";

const layoutText = readFileSync(
  new URL("../public/assets/layout.json", import.meta.url), "utf-8");

function mutated(change: (obj: any) => void): string {
  const obj = JSON.parse(layoutText);
  change(obj);
  return JSON.stringify(obj);
}

describe("layout loading", () => {
  it("loads the exported layout", () => {
    const layout = loadLayout(layoutText);
    expect(layout.id).toBe("two-set-extended");
    expect(layout.keys.length).toBe(57);
    expect(layout.emitFor("KeyS", false)).toBe("N");
    expect(layout.emitFor("KeyB", true)).toBe("B*");
    expect(layout.keyFor("@rhotic").code).toBe("KeyH");
  });

  it("reports unmapped keys with their layer", () => {
    const layout = loadLayout(layoutText);
    expect(() => layout.emitFor("F13", false)).toThrow(/base layer/);
    expect(() => layout.emitFor("Digit9", true)).toThrow(LayoutError);
    expect(layout.hasKey("F13", false)).toBe(false);
  });

  it("rejects malformed JSON and bad schemas", () => {
    expect(() => loadLayout("{nope")).toThrow(/not valid JSON/);
    expect(() => loadLayout("[]")).toThrow(/JSON object/);
    expect(() => loadLayout(mutated((o) => delete o.id))).toThrow(/string id/);
    expect(() => loadLayout(mutated((o) => (o.version = "one")))).toThrow(/integer version/);
    expect(() => loadLayout(mutated((o) => (o.keys[0].shift = 0)))).toThrow(/code, shift, emit/);
  });

  it("rejects duplicate keys and duplicate emits", () => {
    expect(() => loadLayout(mutated((o) => {
      o.keys[1].code = o.keys[0].code;
      o.keys[1].shift = o.keys[0].shift;
    }))).toThrow(/duplicate key/);
    expect(() => loadLayout(mutated((o) => {
      o.keys[1].emit = o.keys[0].emit;
    }))).toThrow(/more than one key/);
  });

  it("rejects editing keys and non-canonical emits", () => {
    expect(() => loadLayout(mutated((o) => (o.keys[0].code = "Space"))))
      .toThrow(/editing key/);
    for (const bad of ["SIL", "G*", "A*", "_^", "@tone9", ""]) {
      expect(() => loadLayout(mutated((o) => (o.keys[0].emit = bad))))
        .toThrow(/unknown token/);
    }
  });
});
