import { readFileSync } from "node:fs";
import { Server } from "node:http";
import { AddressInfo } from "node:net";
import { join } from "node:path";

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { z } from "zod";

import { DEFAULT_CONFIG } from "../src/model.js";
import { createApp } from "../src/server.js";

const EmbedResponse = z.object({
  dim: z.number().int().positive(),
  tokenizations: z.array(z.array(z.string())),
  embeddings: z.array(z.array(z.array(z.number().min(-1).max(1)))),
  model: z.string(),
  layer: z.string(),
});

const AnswerResponse = z.object({
  answer: z.string().nullable(),
  score: z.number().min(0).max(1),
});

interface GoldenPair {
  question: string;
  context: string;
  answer: string | null;
  score: number;
}

const golden: { model: string; pairs: GoldenPair[] } = JSON.parse(
  readFileSync(join(__dirname, "golden_qa.json"), "utf-8"),
);

let server: Server;
let base: string;

beforeAll(async () => {
  const app = createApp(DEFAULT_CONFIG);
  await new Promise<void>((resolve) => {
    server = app.listen(0, () => resolve());
  });
  base = `http://127.0.0.1:${(server.address() as AddressInfo).port}`;
});

afterAll(() => {
  server.close();
});

async function post(path: string, body: unknown): Promise<{ status: number; json: any }> {
  const res = await fetch(base + path, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  return { status: res.status, json: await res.json() };
}

describe("GET /health", () => {
  it("reports ok and the model name", async () => {
    const res = await fetch(`${base}/health`);
    expect(res.status).toBe(200);
    const body = await res.json();
    expect(body).toEqual({ status: "ok", model: DEFAULT_CONFIG.modelName });
  });
});

describe("POST /embed", () => {
  it("conforms to the response schema", async () => {
    const { status, json } = await post("/embed", { texts: ["river bank", "money bank"] });
    expect(status).toBe(200);
    const parsed = EmbedResponse.parse(json);
    expect(parsed.dim).toBe(DEFAULT_CONFIG.dimension);
    expect(parsed.model).toBe(DEFAULT_CONFIG.modelName);
  });

  it("returns one vector per reported token", async () => {
    const { json } = await post("/embed", { texts: ["river bank", "money bank opens today"] });
    const parsed = EmbedResponse.parse(json);
    expect(parsed.embeddings).toHaveLength(2);
    for (let i = 0; i < parsed.embeddings.length; i++) {
      expect(parsed.embeddings[i]).toHaveLength(parsed.tokenizations[i].length);
      for (const vector of parsed.embeddings[i]) {
        expect(vector).toHaveLength(parsed.dim);
      }
    }
  });

  it("gives the same word different vectors under different contexts", async () => {
    const { json } = await post("/embed", { texts: ["river bank", "money bank"] });
    const parsed = EmbedResponse.parse(json);
    const riverBank = parsed.embeddings[0][parsed.tokenizations[0].indexOf("bank")];
    const moneyBank = parsed.embeddings[1][parsed.tokenizations[1].indexOf("bank")];
    expect(riverBank).not.toEqual(moneyBank);
  });

  it("is deterministic across calls", async () => {
    const first = await post("/embed", { texts: ["the green curry remains our favorite"] });
    const second = await post("/embed", { texts: ["the green curry remains our favorite"] });
    expect(first.json).toEqual(second.json);
  });

  it("serves concurrent requests identically", async () => {
    const bodies = await Promise.all(
      Array.from({ length: 8 }, () => post("/embed", { texts: ["daily specials"] })),
    );
    for (const { json } of bodies) {
      expect(json).toEqual(bodies[0].json);
    }
  });

  it("rejects an empty batch", async () => {
    const { status } = await post("/embed", { texts: [] });
    expect(status).toBe(422);
  });

  it("rejects over-length texts naming the index", async () => {
    const long = Array.from({ length: 513 }, (_, i) => `w${i}`).join(" ");
    const { status, json } = await post("/embed", { texts: ["fine text", long] });
    expect(status).toBe(422);
    expect(json.index).toBe(1);
  });

  it("rejects token-free texts", async () => {
    const { status, json } = await post("/embed", { texts: ["..."] });
    expect(status).toBe(422);
    expect(json.index).toBe(0);
  });
});

describe("POST /answer", () => {
  it("conforms to the response schema", async () => {
    const { status, json } = await post("/answer", {
      question: "How is the price?",
      context: "Portions run slightly pricey for this neighborhood.",
    });
    expect(status).toBe(200);
    AnswerResponse.parse(json);
  });

  it("returns null when nothing matches", async () => {
    const { json } = await post("/answer", {
      question: "What is the wifi password?",
      context: "The pumpkin sticky rice is delicious.",
    });
    expect(AnswerResponse.parse(json).answer).toBeNull();
  });

  it("rejects an empty question", async () => {
    const { status } = await post("/answer", { question: " ", context: "text." });
    expect(status).toBe(422);
  });

  it("rejects an empty context", async () => {
    const { status } = await post("/answer", { question: "How?", context: "" });
    expect(status).toBe(422);
  });

  it("is deterministic across calls", async () => {
    const body = { question: "Is it clean?", context: "Every table was spotlessly clean." };
    const first = await post("/answer", body);
    const second = await post("/answer", body);
    expect(first.json).toEqual(second.json);
  });
});

describe("golden QA pairs (pinned to the model version)", () => {
  it("is pinned against the served model", () => {
    expect(golden.model).toBe(DEFAULT_CONFIG.modelName);
    expect(golden.pairs).toHaveLength(20);
  });

  it("every non-null answer is a verbatim substring of its context", async () => {
    for (const pair of golden.pairs) {
      const { status, json } = await post("/answer", {
        question: pair.question,
        context: pair.context,
      });
      expect(status).toBe(200);
      const parsed = AnswerResponse.parse(json);
      if (parsed.answer !== null) {
        expect(pair.context.includes(parsed.answer)).toBe(true);
      }
    }
  });

  it("reproduces the pinned spans and scores exactly", async () => {
    for (const pair of golden.pairs) {
      const { json } = await post("/answer", {
        question: pair.question,
        context: pair.context,
      });
      expect(json.answer, `question: ${pair.question}`).toBe(pair.answer);
      expect(json.score).toBeCloseTo(pair.score, 12);
    }
  });
});
