/**
 * PBM bitmap parsing (ASCII P1 and packed P4), the format the glyph
 * atlas ships in. Matches the CLI reader: header comments allowed,
 * dimensions bounded to 256, P1 tolerates comments between digits.
 */

export const MAX_GLYPH_SIZE = 256;

export class PbmError extends Error {}

export interface Bitmap {
  readonly width: number;
  readonly height: number;
  /** Row-major 0/1, length width * height. */
  readonly bits: Uint8Array;
}

export function makeBitmap(width: number, height: number, bits?: Uint8Array): Bitmap {
  if (bits === undefined) bits = new Uint8Array(width * height);
  if (bits.length !== width * height) throw new PbmError("bitmap size mismatch");
  return { width, height, bits };
}

export function getPixel(bitmap: Bitmap, row: number, col: number): boolean {
  return bitmap.bits[row * bitmap.width + col] !== 0;
}

function isSpaceByte(byte: number): boolean {
  return byte === 0x20 || byte === 0x09 || byte === 0x0a ||
         byte === 0x0b || byte === 0x0c || byte === 0x0d;
}

export function parsePbm(data: Uint8Array): Bitmap {
  const HASH = 0x23;

  function skipBlank(pos: number): number {
    while (pos < data.length) {
      if (isSpaceByte(data[pos])) {
        pos += 1;
      } else if (data[pos] === HASH) {
        while (pos < data.length && data[pos] !== 0x0a) pos += 1;
      } else {
        break;
      }
    }
    return pos;
  }

  function readToken(pos: number): [string, number] {
    pos = skipBlank(pos);
    const start = pos;
    while (pos < data.length && !isSpaceByte(data[pos]) && data[pos] !== HASH) {
      pos += 1;
    }
    if (start === pos) throw new PbmError("truncated pbm header");
    let token = "";
    for (let i = start; i < pos; i++) token += String.fromCharCode(data[i]);
    return [token, pos];
  }

  let pos = 0;
  let magic: string;
  [magic, pos] = readToken(pos);
  if (magic !== "P1" && magic !== "P4") {
    throw new PbmError(`unsupported pbm magic '${magic}'`);
  }
  let widthTok: string, heightTok: string;
  [widthTok, pos] = readToken(pos);
  [heightTok, pos] = readToken(pos);
  const width = Number(widthTok);
  const height = Number(heightTok);
  if (!Number.isInteger(width) || !Number.isInteger(height)) {
    throw new PbmError("non-numeric pbm dimensions");
  }
  if (width < 1 || width > MAX_GLYPH_SIZE || height < 1 || height > MAX_GLYPH_SIZE) {
    throw new PbmError(`glyph dimensions ${width}x${height} outside 1..${MAX_GLYPH_SIZE}`);
  }

  const bits = new Uint8Array(width * height);
  if (magic === "P1") {
    let count = 0;
    while (pos < data.length && count < width * height) {
      const byte = data[pos];
      if (isSpaceByte(byte)) {
        pos += 1;
      } else if (byte === HASH) {
        while (pos < data.length && data[pos] !== 0x0a) pos += 1;
      } else if (byte === 0x30 || byte === 0x31) {
        bits[count++] = byte === 0x31 ? 1 : 0;
        pos += 1;
      } else {
        throw new PbmError(`unexpected byte in pbm data`);
      }
    }
    if (count < width * height) throw new PbmError("truncated pbm data");
  } else {
    if (pos >= data.length || !isSpaceByte(data[pos])) {
      throw new PbmError("missing raster separator");
    }
    pos += 1;
    const rowBytes = Math.ceil(width / 8);
    if (data.length - pos < rowBytes * height) {
      throw new PbmError("truncated pbm data");
    }
    for (let r = 0; r < height; r++) {
      for (let c = 0; c < width; c++) {
        const byte = data[pos + r * rowBytes + (c >> 3)];
        bits[r * width + c] = (byte >> (7 - (c & 7))) & 1;
      }
    }
  }
  if (!bits.some((b) => b !== 0)) throw new PbmError("glyph has no ink pixels");
  return { width, height, bits };
}
