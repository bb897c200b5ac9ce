/**
 * Client-side atom grammar, mirroring the engine's KB language rule:
 *
 *   atom := name [ "(" term { "," term } ")" ]
 *   term := VARIABLE | INTEGER | name [ "(" term { "," term } ")" ]
 *
 * Names start lowercase; variables start uppercase or underscore.
 * Returns the canonical compact rendering, or an error message.
 */

export type AtomParse = { ok: true; atom: string } | { ok: false; error: string };

interface Cursor {
  text: string;
  pos: number;
}

function skipWs(c: Cursor): void {
  while (c.pos < c.text.length && /\s/.test(c.text[c.pos])) c.pos++;
}

function ident(c: Cursor): string | null {
  skipWs(c);
  const m = /^[A-Za-z_][A-Za-z0-9_]*/.exec(c.text.slice(c.pos));
  if (!m) return null;
  c.pos += m[0].length;
  return m[0];
}

function integer(c: Cursor): string | null {
  skipWs(c);
  const m = /^[0-9]+/.exec(c.text.slice(c.pos));
  if (!m) return null;
  c.pos += m[0].length;
  return m[0];
}

function punct(c: Cursor, ch: string): boolean {
  skipWs(c);
  if (c.text[c.pos] === ch) {
    c.pos++;
    return true;
  }
  return false;
}

function term(c: Cursor): string {
  const n = integer(c);
  if (n !== null) return n;
  const word = ident(c);
  if (word === null) {
    throw new Error(`expected a term at position ${c.pos}`);
  }
  if (/^[A-Z_]/.test(word)) return word; // variable
  if (punct(c, "(")) {
    const args = [term(c)];
    while (punct(c, ",")) args.push(term(c));
    if (!punct(c, ")")) throw new Error("expected ')'");
    return `${word}(${args.join(",")})`;
  }
  return word;
}

export function parseAtom(text: string): AtomParse {
  const c: Cursor = { text, pos: 0 };
  try {
    const name = ident(c);
    if (name === null) return { ok: false, error: "expected a predicate name" };
    if (/^[A-Z_]/.test(name)) {
      return { ok: false, error: "predicate names start lowercase" };
    }
    let rendered = name;
    if (punct(c, "(")) {
      const args = [term(c)];
      while (punct(c, ",")) args.push(term(c));
      if (!punct(c, ")")) return { ok: false, error: "expected ')'" };
      rendered = `${name}(${args.join(",")})`;
    }
    skipWs(c);
    if (c.pos !== c.text.length) {
      return { ok: false, error: `unexpected input at position ${c.pos}` };
    }
    return { ok: true, atom: rendered };
  } catch (err) {
    return { ok: false, error: err instanceof Error ? err.message : String(err) };
  }
}
