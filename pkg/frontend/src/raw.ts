/** Raw-text JSON slicing.
 *
 * The panel must display tip coordinates byte-identical to what the service
 * sent. Parsing to a double and re-printing loses the original spelling
 * (the server writes 160.0 where String(160) gives "160"), so the displayed
 * strings are cut straight out of the response body instead.
 */

class Cursor {
  pos = 0;
  constructor(readonly text: string) {}

  skipWs(): void {
    while (this.pos < this.text.length && " \t\n\r".includes(this.text[this.pos]!)) {
      this.pos++;
    }
  }

  peek(): string {
    const ch = this.text[this.pos];
    if (ch === undefined) throw new Error("unexpected end of JSON text");
    return ch;
  }

  expect(ch: string): void {
    if (this.peek() !== ch) {
      throw new Error(`expected '${ch}' at offset ${this.pos}, found '${this.peek()}'`);
    }
    this.pos++;
  }
}

function skipString(c: Cursor): string {
  c.expect('"');
  const start = c.pos;
  while (true) {
    const ch = c.peek();
    c.pos++;
    if (ch === "\\") c.pos++;
    else if (ch === '"') return c.text.slice(start, c.pos - 1);
  }
}

function skipValue(c: Cursor): void {
  c.skipWs();
  const ch = c.peek();
  if (ch === '"') {
    skipString(c);
  } else if (ch === "{") {
    c.pos++;
    c.skipWs();
    if (c.peek() === "}") return void c.pos++;
    while (true) {
      c.skipWs();
      skipString(c);
      c.skipWs();
      c.expect(":");
      skipValue(c);
      c.skipWs();
      if (c.peek() === ",") c.pos++;
      else return c.expect("}");
    }
  } else if (ch === "[") {
    c.pos++;
    c.skipWs();
    if (c.peek() === "]") return void c.pos++;
    while (true) {
      skipValue(c);
      c.skipWs();
      if (c.peek() === ",") c.pos++;
      else return c.expect("]");
    }
  } else {
    // number / true / false / null: run to the next structural character
    while (c.pos < c.text.length && !',}] \t\n\r'.includes(c.text[c.pos]!)) c.pos++;
  }
}

/** Source text of the value at `path`, exactly as it appears in `raw`. */
export function rawSlice(raw: string, path: (string | number)[]): string {
  const c = new Cursor(raw);
  for (const step of path) {
    c.skipWs();
    if (typeof step === "string") {
      c.expect("{");
      let found = false;
      while (!found) {
        c.skipWs();
        const key = skipString(c);
        c.skipWs();
        c.expect(":");
        if (key === step) {
          found = true;
          break;
        }
        skipValue(c);
        c.skipWs();
        if (c.peek() === ",") c.pos++;
        else throw new Error(`key "${step}" not found`);
      }
    } else {
      c.expect("[");
      for (let i = 0; i < step; i++) {
        skipValue(c);
        c.skipWs();
        c.expect(",");
      }
    }
  }
  c.skipWs();
  const start = c.pos;
  skipValue(c);
  return raw.slice(start, c.pos).trimEnd();
}

/** The three tip coordinates as the server spelled them. */
export function tipLiterals(raw: string): [string, string, string] {
  return [
    rawSlice(raw, ["tip", "position", 0]),
    rawSlice(raw, ["tip", "position", 1]),
    rawSlice(raw, ["tip", "position", 2]),
  ];
}
