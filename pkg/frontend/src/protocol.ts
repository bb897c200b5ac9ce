/**
 * Session protocol: newline-delimited JSON, one object per line.
 *
 * Engine → client: ask, frontier, emitted, exhausted, error, halt.
 * Client → engine: answer, observe.
 *
 * Numbers shown in the console must equal the engine's payload
 * bit-for-bit, so alongside JSON.parse we capture the raw lexical
 * number tokens of value/posterior fields straight from the line
 * (1e-05 and 0.00001 are the same double but different bytes).
 */

export type Choice = "yes" | "no" | "unknown";

export interface FrontierRow {
  seq: number;
  assumptions: string[];
  value: string; // raw token from the wire
  status: string;
}

export interface ResultRow {
  assumptions: string[];
  value: string; // raw token
  posterior: string; // raw token or "null"
}

export type EngineMessage =
  | { type: "ask"; atom: string }
  | { type: "frontier"; states: FrontierRow[] }
  | { type: "emitted"; result: ResultRow }
  | { type: "exhausted" }
  | { type: "error"; message: string }
  | { type: "halt"; reason: string; explanations: ResultRow[] };

const NUMBER_FIELD = (key: string) =>
  new RegExp(`"${key}":(null|-?[0-9][0-9eE+\\-.]*)`, "g");

/** Raw lexical tokens of every `"key":<number>` occurrence, in order. */
export function rawNumberTokens(line: string, key: string): string[] {
  const out: string[] = [];
  for (const match of line.matchAll(NUMBER_FIELD(key))) {
    out.push(match[1]);
  }
  return out;
}

export function parseEngineLine(line: string): EngineMessage {
  let obj: any;
  try {
    obj = JSON.parse(line);
  } catch (err) {
    throw new Error(`engine sent a non-JSON line: ${line}`);
  }
  switch (obj.type) {
    case "ask":
      return { type: "ask", atom: String(obj.atom) };
    case "frontier": {
      const values = rawNumberTokens(line, "value");
      const states: FrontierRow[] = (obj.states ?? []).map((s: any, i: number) => ({
        seq: s.seq,
        assumptions: s.assumptions ?? [],
        value: values[i],
        status: String(s.status),
      }));
      return { type: "frontier", states };
    }
    case "emitted":
      return {
        type: "emitted",
        result: {
          assumptions: obj.assumptions ?? [],
          value: rawNumberTokens(line, "value")[0],
          posterior: rawNumberTokens(line, "posterior")[0] ?? "null",
        },
      };
    case "exhausted":
      return { type: "exhausted" };
    case "error":
      return { type: "error", message: String(obj.message) };
    case "halt": {
      const values = rawNumberTokens(line, "value");
      const posteriors = rawNumberTokens(line, "posterior");
      const explanations: ResultRow[] = (obj.explanations ?? []).map(
        (e: any, i: number) => ({
          assumptions: e.assumptions ?? [],
          value: values[i],
          posterior: posteriors[i] ?? "null",
        }),
      );
      return { type: "halt", reason: String(obj.reason ?? "done"), explanations };
    }
    default:
      throw new Error(`unknown engine message type: ${String(obj.type)}`);
  }
}

export function answerLine(atom: string, value: Choice): string {
  return JSON.stringify({ type: "answer", atom, value });
}

export function observeLine(atom: string): string {
  return JSON.stringify({ type: "observe", atom });
}
