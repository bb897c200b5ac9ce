/**
 * Thin local bridge: spawns the engine in interactive mode and exposes
 * its stdio protocol over a browser-reachable channel.  Framing is one
 * protocol line per message in both directions:
 *
 *   GET  /            console page
 *   GET  /modules/*   compiled ES modules for the page
 *   GET  /events      engine → client lines as server-sent events
 *   POST /send        one client → engine line per request body
 *
 * Usage: node dist/bridge.js --kb ../corpus/medical_toy.kb \
 *          --goal "ill(john)" [--top-k 2] [--port 8787]
 */

import { spawn, ChildProcess } from "node:child_process";
import { createInterface } from "node:readline";
import { readFileSync } from "node:fs";
import http from "node:http";
import path from "node:path";
import { fileURLToPath } from "node:url";

const HERE = path.dirname(fileURLToPath(import.meta.url));

export interface BridgeOptions {
  kb: string;
  goal: string;
  topK?: number;
  port?: number;
  python?: string;
}

interface Client {
  res: http.ServerResponse;
}

export function startBridge(options: BridgeOptions): Promise<http.Server> {
  const python = options.python ?? "python3";
  const args = [
    "-m",
    "abduce.cli",
    "explain",
    "--kb",
    options.kb,
    "--goal",
    options.goal,
    "--top-k",
    String(options.topK ?? 3),
    "--interactive",
  ];
  const engine: ChildProcess = spawn(python, args, { stdio: ["pipe", "pipe", "inherit"] });
  const clients: Client[] = [];
  const backlog: string[] = [];
  let engineDone = false;

  const fanout = (line: string) => {
    backlog.push(line);
    for (const c of clients) {
      c.res.write(`data: ${line}\n\n`);
    }
  };
  createInterface({ input: engine.stdout! }).on("line", fanout);
  engine.on("exit", () => {
    engineDone = true;
    for (const c of clients) {
      c.res.write("event: closed\ndata: engine exited\n\n");
      c.res.end();
    }
  });

  const server = http.createServer((req, res) => {
    const url = new URL(req.url ?? "/", "http://localhost");
    if (url.pathname === "/events") {
      res.writeHead(200, {
        "Content-Type": "text/event-stream",
        "Cache-Control": "no-cache",
        Connection: "keep-alive",
      });
      for (const line of backlog) {
        res.write(`data: ${line}\n\n`);
      }
      if (engineDone) {
        res.write("event: closed\ndata: engine exited\n\n");
        res.end();
        return;
      }
      const client = { res };
      clients.push(client);
      req.on("close", () => clients.splice(clients.indexOf(client), 1));
      return;
    }
    if (url.pathname === "/send" && req.method === "POST") {
      let body = "";
      req.on("data", (chunk) => (body += chunk));
      req.on("end", () => {
        const line = body.split("\n")[0].trim();
        if (line && engine.stdin?.writable) {
          engine.stdin.write(line + "\n");
          res.writeHead(204).end();
        } else {
          res.writeHead(409).end("engine not accepting input");
        }
      });
      return;
    }
    if (url.pathname.startsWith("/modules/")) {
      const name = path.basename(url.pathname);
      // compiled modules sit beside the running bridge, or in dist/
      // when the bridge itself runs from source under the test runner
      for (const dir of [HERE, path.resolve(HERE, "../dist")]) {
        try {
          const source = readFileSync(path.join(dir, name), "utf-8");
          res.writeHead(200, { "Content-Type": "text/javascript" }).end(source);
          return;
        } catch {
          continue;
        }
      }
      res.writeHead(404).end();
      return;
    }
    res.writeHead(200, { "Content-Type": "text/html; charset=utf-8" }).end(PAGE);
  });

  return new Promise((resolve) => {
    server.listen(options.port ?? 8787, "127.0.0.1", () => resolve(server));
  });
}

const PAGE = `<!doctype html>
<html>
<head>
<meta charset="utf-8"/>
<title>abduce console</title>
<style>
  body { font-family: system-ui, sans-serif; margin: 1.5rem; max-width: 60rem; }
  table { border-collapse: collapse; }
  td, th { border: 1px solid #ccc; padding: 0.2rem 0.6rem; text-align: left; }
  .card { margin: 0.3rem 0; } .card .atom { font-weight: 600; margin-right: 0.6rem; }
  .banner { background: #fee; padding: 0.4rem 0.8rem; border: 1px solid #c99; }
  #timeline ul { font-size: 0.85rem; color: #444; }
  #obs-error { color: #b00; margin-left: 0.6rem; }
</style>
</head>
<body>
<h1>abduce console</h1>
<div id="app">connecting…</div>
<script type="module">
import { SessionStore } from "/modules/session.js";
import { renderHtml } from "/modules/render.js";

const send = (line) => {
  fetch("/send", { method: "POST", body: line }).catch(() => {});
  return true;
};
const store = new SessionStore(send);
const app = document.getElementById("app");

function redraw() {
  app.innerHTML = renderHtml(store.view);
  for (const card of app.querySelectorAll(".card")) {
    const atom = card.dataset.atom;
    for (const button of card.querySelectorAll("button")) {
      button.onclick = () => {
        const choice = button.dataset.choice;
        if (choice === "retry") store.retry(atom, "yes");
        else store.submitAnswer(atom, choice);
        redraw();
      };
    }
  }
  const input = app.querySelector("#obs");
  const sendBtn = app.querySelector("#obs-send");
  if (sendBtn) {
    sendBtn.onclick = () => {
      const out = store.injectObservation(input.value);
      if (!out.sent) {
        app.querySelector("#obs-error").textContent = out.error;
      } else {
        input.value = "";
        redraw();
      }
    };
  }
}

const source = new EventSource("/events");
source.onmessage = (event) => { store.apply(event.data); redraw(); };
source.addEventListener("closed", () => { store.connectionLost(); source.close(); redraw(); });
source.onerror = () => { store.connectionLost(); redraw(); };
redraw();
</script>
</body>
</html>`;

function cliMain(): void {
  const argv = process.argv.slice(2);
  const get = (flag: string, fallback?: string) => {
    const i = argv.indexOf(flag);
    return i >= 0 ? argv[i + 1] : fallback;
  };
  const kb = get("--kb");
  const goal = get("--goal");
  if (!kb || !goal) {
    console.error('usage: node dist/bridge.js --kb FILE --goal "a, b" [--top-k N] [--port N]');
    process.exit(2);
  }
  const port = Number(get("--port", "8787"));
  startBridge({ kb, goal, topK: Number(get("--top-k", "3")), port }).then(() => {
    console.log(`console at http://127.0.0.1:${port}/`);
  });
}

if (process.argv[1] && fileURLToPath(import.meta.url) === path.resolve(process.argv[1])) {
  cliMain();
}
