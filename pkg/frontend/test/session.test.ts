import { describe, expect, it } from "vitest";

import { SessionStore } from "../src/session.js";
import { renderText, renderHtml } from "../src/render.js";
import { parseAtom } from "../src/atom.js";

function storeWithSink() {
  const sent: string[] = [];
  const store = new SessionStore((line) => {
    sent.push(line);
    return true;
  });
  return { store, sent };
}

const FRONTIER3 =
  '{"type":"frontier","states":[' +
  '{"seq":0,"assumptions":[],"value":1.0,"status":"suspended"},' +
  '{"seq":2,"assumptions":["h1"],"value":0.5,"status":"suspended"},' +
  '{"seq":5,"assumptions":["h1","h2"],"value":0.25,"status":"suspended"}]}';

describe("rendering contract", () => {
  it("frontier rows plus a question card", () => {
    const { store } = storeWithSink();
    store.apply(FRONTIER3);
    store.apply('{"type":"ask","atom":"a"}');
    expect(store.view.frontier).toHaveLength(3);
    expect(store.view.pending).toHaveLength(1);
    // arrival order preserved verbatim (the engine sorts)
    expect(store.view.frontier.map((r) => r.value)).toEqual(["1.0", "0.5", "0.25"]);
  });

  it("emitted rows show value and posterior verbatim and prepend", () => {
    const { store } = storeWithSink();
    store.apply('{"type":"emitted","assumptions":["h2","h3"],"value":0.25,"posterior":0.7142857142857143}');
    store.apply('{"type":"emitted","assumptions":["h1"],"value":0.1,"posterior":0.2857142857142857}');
    expect(store.view.results[0].assumptions).toEqual(["h1"]);
    const text = renderText(store.view);
    expect(text).toContain("0.25");
    expect(text).toContain("0.7142857142857143");
  });

  it("exhaustion shows the terminal banner", () => {
    const { store } = storeWithSink();
    store.apply('{"type":"exhausted"}');
    expect(renderText(store.view)).toContain("no further explanations");
    expect(renderHtml(store.view)).toContain("no further explanations");
  });

  it("halt refreshes posteriors on existing rows", () => {
    const { store } = storeWithSink();
    store.apply('{"type":"emitted","assumptions":["a"],"value":0.3,"posterior":1.0}');
    store.apply('{"type":"emitted","assumptions":["b"],"value":0.2,"posterior":0.4}');
    store.apply(
      '{"type":"halt","reason":"done","explanations":[' +
        '{"assumptions":["a"],"value":0.3,"posterior":0.6},' +
        '{"assumptions":["b"],"value":0.2,"posterior":0.4}]}',
    );
    const byKey = Object.fromEntries(
      store.view.results.map((r) => [r.assumptions.join(","), r.posterior]),
    );
    expect(byKey).toEqual({ a: "0.6", b: "0.4" });
    expect(store.view.halted).toBe(true);
  });

  it("connection loss flips to read-only with a banner", () => {
    const { store } = storeWithSink();
    store.connectionLost();
    expect(store.view.connection).toBe("closed");
    expect(renderHtml(store.view)).toContain("connection lost");
  });
});

describe("submit_answer", () => {
  it("sends the protocol line and moves the card to the timeline", () => {
    const { store, sent } = storeWithSink();
    store.apply('{"type":"ask","atom":"symptom(fever)"}');
    const out = store.submitAnswer("symptom(fever)", "yes");
    expect(out.sent).toBe(true);
    expect(sent).toEqual(['{"type":"answer","atom":"symptom(fever)","value":"yes"}']);
    expect(store.view.pending).toHaveLength(0);
    expect(store.view.timeline.some((t) => t.kind === "answered")).toBe(true);
    expect(store.view.awaitingAck).toBe(true);
    store.apply('{"type":"frontier","states":[]}');
    expect(store.view.awaitingAck).toBe(false);
  });

  it("unknown answers round-trip too", () => {
    const { store, sent } = storeWithSink();
    store.apply('{"type":"ask","atom":"a"}');
    store.submitAnswer("a", "unknown");
    expect(sent).toEqual(['{"type":"answer","atom":"a","value":"unknown"}']);
  });

  it("rejects answers to questions that are not pending", () => {
    const { store, sent } = storeWithSink();
    const out = store.submitAnswer("never_asked", "yes");
    expect(out.sent).toBe(false);
    expect(sent).toHaveLength(0);
  });

  it("send failure returns the card to pending with retry", () => {
    let fail = true;
    const sent: string[] = [];
    const store = new SessionStore((line) => {
      if (fail) return false;
      sent.push(line);
      return true;
    });
    store.apply('{"type":"ask","atom":"a"}');
    const out = store.submitAnswer("a", "no");
    expect(out.sent).toBe(false);
    expect(store.view.pending[0].status).toBe("failed");
    fail = false;
    expect(store.retry("a", "no").sent).toBe(true);
    expect(sent).toEqual(['{"type":"answer","atom":"a","value":"no"}']);
  });
});

describe("inject_observation", () => {
  it("sends a parsed atom", () => {
    const { store, sent } = storeWithSink();
    const out = store.injectObservation("fever(john)");
    expect(out.sent).toBe(true);
    expect(sent).toEqual(['{"type":"observe","atom":"fever(john)"}']);
    expect(store.view.timeline.some((t) => t.kind === "injected")).toBe(true);
  });

  it("validation failure sends nothing", () => {
    const { store, sent } = storeWithSink();
    const out = store.injectObservation("Fever(");
    expect(out.sent).toBe(false);
    expect(out.error).toBeTruthy();
    expect(sent).toHaveLength(0);
  });

  it("disabled once exhausted", () => {
    const { store, sent } = storeWithSink();
    store.apply('{"type":"exhausted"}');
    const out = store.injectObservation("fever(john)");
    expect(out.sent).toBe(false);
    expect(sent).toHaveLength(0);
  });
});

describe("atom grammar mirrors the KB language", () => {
  it("accepts the engine's forms", () => {
    expect(parseAtom("fever(john)")).toEqual({ ok: true, atom: "fever(john)" });
    expect(parseAtom("p")).toEqual({ ok: true, atom: "p" });
    expect(parseAtom("val(in1, 1)")).toEqual({ ok: true, atom: "val(in1,1)" });
    expect(parseAtom("p(f(g(X), a))")).toEqual({ ok: true, atom: "p(f(g(X),a))" });
  });

  it("rejects what the engine rejects", () => {
    for (const bad of ["Fever(", "p(", "p)", "p(a,)", "", "p(a) extra", "9p"]) {
      expect(parseAtom(bad).ok, bad).toBe(false);
    }
  });
});

describe("deterministic replay", () => {
  const transcript = [
    FRONTIER3,
    '{"type":"ask","atom":"fever(john)"}',
    '{"type":"emitted","assumptions":["has_cold(john)"],"value":0.3,"posterior":1.0}',
    '{"type":"exhausted"}',
    '{"type":"halt","reason":"done","explanations":[{"assumptions":["has_cold(john)"],"value":0.3,"posterior":1.0}]}',
  ];

  it("same transcript, same final snapshot", () => {
    const render = () => {
      const { store } = storeWithSink();
      for (const line of transcript) store.apply(line);
      return renderText(store.view);
    };
    expect(render()).toBe(render());
  });
});
