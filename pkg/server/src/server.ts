/**
 * HTTP wiring for the inference sidecar.
 *
 * POST /embed   {"texts": [string, ...]}
 *   -> {"dim", "tokenizations", "embeddings", "model", "layer"}
 * POST /answer  {"question": string, "context": string}
 *   -> {"answer": string|null, "score": number}
 * GET  /health  -> {"status": "ok", "model": string}
 *
 * Validation failures return 422 with a message (and the offending index
 * for batch requests); unexpected engine errors return 503.
 */

import express, { Express, Request, Response } from "express";

import {
  ContextualEncoder,
  Extraction,
  MAX_TOKENS_PER_TEXT,
  ModelConfig,
  extractAnswer,
  tokenize,
} from "./model.js";

export function createApp(config: ModelConfig): Express {
  const encoder = new ContextualEncoder(config);
  const app = express();
  app.use(express.json({ limit: "4mb" }));

  app.get("/health", (_req: Request, res: Response) => {
    res.json({ status: "ok", model: config.modelName });
  });

  app.post("/embed", (req: Request, res: Response) => {
    const texts = req.body?.texts;
    if (!Array.isArray(texts) || texts.length === 0) {
      res.status(422).json({ error: "texts must be a non-empty array of strings" });
      return;
    }
    for (let i = 0; i < texts.length; i++) {
      if (typeof texts[i] !== "string" || texts[i].trim() === "") {
        res.status(422).json({ error: `texts[${i}] must be a non-empty string`, index: i });
        return;
      }
      if (tokenize(texts[i]).length > MAX_TOKENS_PER_TEXT) {
        res.status(422).json({
          error: `texts[${i}] exceeds ${MAX_TOKENS_PER_TEXT} tokens`,
          index: i,
        });
        return;
      }
      if (tokenize(texts[i]).length === 0) {
        res.status(422).json({ error: `texts[${i}] contains no tokens`, index: i });
        return;
      }
    }

    try {
      const results = texts.map((text: string) => encoder.embedText(text));
      for (const { vectors } of results) {
        for (const vector of vectors) {
          for (const value of vector) {
            if (!Number.isFinite(value) || value < -1 || value > 1) {
              throw new Error("encoder produced a value outside [-1, 1]");
            }
          }
        }
      }
      res.json({
        dim: config.dimension,
        tokenizations: results.map((r) => r.tokens),
        embeddings: results.map((r) => r.vectors),
        model: config.modelName,
        layer: config.layer,
      });
    } catch (err) {
      res.status(503).json({ error: `embedding failed: ${String(err)}` });
    }
  });

  app.post("/answer", (req: Request, res: Response) => {
    const { question, context } = req.body ?? {};
    if (typeof question !== "string" || question.trim() === "") {
      res.status(422).json({ error: "question must be a non-empty string" });
      return;
    }
    if (typeof context !== "string" || context.trim() === "") {
      res.status(422).json({ error: "context must be a non-empty string" });
      return;
    }

    try {
      const extraction: Extraction = extractAnswer(question, context);
      if (extraction.answer !== null && !context.includes(extraction.answer)) {
        throw new Error("extracted span is not a substring of the context");
      }
      res.json(extraction);
    } catch (err) {
      res.status(503).json({ error: `answer extraction failed: ${String(err)}` });
    }
  });

  return app;
}
