/** Boots the real API server over a synthetic corpus for the UI tests.
 *
 * Runs the Python pipeline (demo data, ingest, scores, researcher
 * indicators) into a temp directory, rewrites the config to a free
 * port, starts `trackrecord serve`, and provides the base URL, fixture
 * ORCIDs, and tokens to the tests.
 */

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import { fileURLToPath } from "node:url";
import type { TestProject } from "vitest/node";

const REPO_ROOT = resolve(fileURLToPath(new URL(".", import.meta.url)), "../..");
const PYTHON = process.env.TRACKRECORD_PYTHON ?? "python3";

function freePort(): Promise<number> {
  return new Promise((resolvePort, reject) => {
    const server = createServer();
    server.listen(0, "127.0.0.1", () => {
      const address = server.address();
      if (address && typeof address === "object") {
        const port = address.port;
        server.close(() => resolvePort(port));
      } else {
        reject(new Error("no port"));
      }
    });
  });
}

function run(args: string[], cwd: string): void {
  execFileSync(PYTHON, args, { cwd, stdio: ["ignore", "inherit", "inherit"] });
}

async function waitForReady(child: ChildProcess): Promise<void> {
  await new Promise<void>((resolveReady, reject) => {
    const timer = setTimeout(() => reject(new Error("server start timeout")), 60_000);
    let buffered = "";
    child.stdout!.on("data", (chunk: Buffer) => {
      buffered += chunk.toString();
      if (buffered.includes("ready:")) {
        clearTimeout(timer);
        resolveReady();
      }
    });
    child.on("exit", (code) => {
      clearTimeout(timer);
      reject(new Error(`server exited early with code ${code}: ${buffered}`));
    });
  });
}

export default async function setup(project: TestProject): Promise<() => void> {
  const dir = mkdtempSync(join(tmpdir(), "trackrecord-ui-"));
  run(["scripts/make_demo_data.py", "--out", dir], REPO_ROOT);
  run(
    ["-m", "trackrecord", "ingest",
     "--source", `corpus-a=${join(dir, "source_a.jsonl")}`,
     "--source", `corpus-b=${join(dir, "source_b.jsonl")}`,
     "--dataset-year", "2021", "--out", join(dir, "graph.jsonl")],
    REPO_ROOT,
  );
  run(
    ["-m", "trackrecord", "compute-work-scores",
     "--graph", join(dir, "graph.jsonl"),
     "--params", join(dir, "config.json"), "--out", join(dir, "scores.csv")],
    REPO_ROOT,
  );
  run(
    ["-m", "trackrecord", "compute-researcher",
     "--graph", join(dir, "graph.jsonl"), "--scores", join(dir, "scores.csv"),
     "--profiles", join(dir, "profiles.json"), "--out", join(dir, "indicators.json")],
    REPO_ROOT,
  );

  const port = await freePort();
  const configPath = join(dir, "config.json");
  const config = JSON.parse(readFileSync(configPath, "utf-8"));
  config.listen.port = port;
  writeFileSync(configPath, JSON.stringify(config, null, 2));

  const child = spawn(PYTHON, ["-m", "trackrecord", "serve", "--config", configPath], {
    cwd: REPO_ROOT,
    stdio: ["ignore", "pipe", "pipe"],
    env: { ...process.env, TRACKRECORD_CONFIG: "" },
  });
  await waitForReady(child);

  const profiles = JSON.parse(readFileSync(join(dir, "profiles.json"), "utf-8")).profiles;
  const orcids = Object.keys(profiles);
  const publicOrcid = orcids.find((o) => profiles[o].visibility === "public")!;
  const privateOrcid = orcids.find((o) => profiles[o].visibility === "private")!;

  project.provide("baseUrl", `http://127.0.0.1:${port}`);
  project.provide("publicOrcid", publicOrcid);
  project.provide("privateOrcid", privateOrcid);
  project.provide("ownerToken", "demo-token-alex");
  project.provide("otherToken", "demo-token-robin");

  return () => {
    child.kill("SIGTERM");
    rmSync(dir, { recursive: true, force: true });
  };
}

declare module "vitest" {
  export interface ProvidedContext {
    baseUrl: string;
    publicOrcid: string;
    privateOrcid: string;
    ownerToken: string;
    otherToken: string;
  }
}
