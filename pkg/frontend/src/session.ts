/**
 * SessionView state machine: applies engine protocol lines in arrival
 * order and produces what the console renders.  The view never computes
 * a probability; every number it holds is a raw token from the wire.
 */

import { parseAtom } from "./atom.js";
import {
  Choice,
  FrontierRow,
  ResultRow,
  answerLine,
  observeLine,
  parseEngineLine,
} from "./protocol.js";

export interface QuestionCard {
  atom: string;
  status: "pending" | "sending" | "failed";
}

export interface TimelineEntry {
  kind:
    | "asked"
    | "answered"
    | "injected"
    | "emitted"
    | "exhausted"
    | "error"
    | "halted"
    | "connection";
  text: string;
}

export interface SessionView {
  pending: QuestionCard[];
  frontier: FrontierRow[];
  results: ResultRow[]; // newest first
  timeline: TimelineEntry[];
  connection: "connected" | "closed";
  exhausted: boolean;
  halted: boolean;
  awaitingAck: boolean;
}

export type SendLine = (line: string) => boolean;

export function emptyView(): SessionView {
  return {
    pending: [],
    frontier: [],
    results: [],
    timeline: [],
    connection: "connected",
    exhausted: false,
    halted: false,
    awaitingAck: false,
  };
}

export class SessionStore {
  view: SessionView = emptyView();

  constructor(private send: SendLine) {}

  /** Apply one engine line; rendering is incremental and order-preserving. */
  apply(line: string): void {
    if (line.trim() === "") return;
    const msg = parseEngineLine(line);
    const v = this.view;
    v.awaitingAck = false;
    switch (msg.type) {
      case "ask":
        v.pending.push({ atom: msg.atom, status: "pending" });
        v.timeline.push({ kind: "asked", text: msg.atom });
        break;
      case "frontier":
        // already sorted by the engine's (value, assumptions, seq) key;
        // arrival order is preserved verbatim
        v.frontier = msg.states;
        break;
      case "emitted":
        v.results.unshift(msg.result);
        v.timeline.push({
          kind: "emitted",
          text: `${msg.result.value} {${msg.result.assumptions.join(", ")}}`,
        });
        break;
      case "exhausted":
        v.exhausted = true;
        v.timeline.push({ kind: "exhausted", text: "no further explanations" });
        break;
      case "error":
        v.timeline.push({ kind: "error", text: msg.message });
        break;
      case "halt":
        v.halted = true;
        // final posteriors arrive here; update result rows by assumption set
        for (const final of msg.explanations) {
          const key = final.assumptions.join(",");
          const row = v.results.find((r) => r.assumptions.join(",") === key);
          if (row) {
            row.posterior = final.posterior;
            row.value = final.value;
          } else {
            v.results.push(final);
          }
        }
        v.timeline.push({ kind: "halted", text: msg.reason });
        break;
    }
  }

  connectionLost(): void {
    this.view.connection = "closed";
    this.view.timeline.push({ kind: "connection", text: "connection lost; read-only" });
  }

  /** Answer a pending question.  Rejected locally when the question is
   * not pending; on send failure the card returns to pending with a
   * retry affordance. */
  submitAnswer(atom: string, choice: Choice): { sent: boolean; reason?: string } {
    const card = this.view.pending.find((c) => c.atom === atom);
    if (!card || card.status === "sending") {
      return { sent: false, reason: "question is not pending" };
    }
    card.status = "sending";
    const ok = this.send(answerLine(atom, choice));
    if (!ok) {
      card.status = "failed"; // retry affordance: still answerable
      return { sent: false, reason: "send failure" };
    }
    this.view.pending = this.view.pending.filter((c) => c !== card);
    this.view.timeline.push({ kind: "answered", text: `${atom} = ${choice}` });
    this.view.awaitingAck = true;
    return { sent: true };
  }

  retry(atom: string, choice: Choice): { sent: boolean; reason?: string } {
    const card = this.view.pending.find((c) => c.atom === atom);
    if (card && card.status === "failed") card.status = "pending";
    return this.submitAnswer(atom, choice);
  }

  /** Inject an observation typed by the user; the atom must parse
   * against the KB atom grammar and the session must still be live. */
  injectObservation(text: string): { sent: boolean; error?: string } {
    if (this.view.exhausted || this.view.halted) {
      return { sent: false, error: "session is over; injection disabled" };
    }
    const parsed = parseAtom(text);
    if (!parsed.ok) {
      return { sent: false, error: parsed.error };
    }
    const ok = this.send(observeLine(parsed.atom));
    if (!ok) {
      return { sent: false, error: "send failure" };
    }
    this.view.timeline.push({ kind: "injected", text: parsed.atom });
    return { sent: true };
  }
}
