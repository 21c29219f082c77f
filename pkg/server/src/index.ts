/**
 * Entry point.  Environment:
 *   MODEL_NAME          encoder identity reported by /health and /embed
 *   PORT                listen port (default 8400)
 *   NORMALIZATION_SCALE divisor bringing raw hidden values into [-1, 1]
 */

import { DEFAULT_CONFIG, ModelConfig } from "./model.js";
import { createApp } from "./server.js";

const config: ModelConfig = {
  ...DEFAULT_CONFIG,
  modelName: process.env.MODEL_NAME ?? DEFAULT_CONFIG.modelName,
  normalizationScale: process.env.NORMALIZATION_SCALE
    ? Number(process.env.NORMALIZATION_SCALE)
    : DEFAULT_CONFIG.normalizationScale,
};

if (!Number.isFinite(config.normalizationScale) || config.normalizationScale <= 0) {
  console.error(`invalid NORMALIZATION_SCALE: ${process.env.NORMALIZATION_SCALE}`);
  process.exit(1);
}

const port = Number(process.env.PORT ?? 8400);
createApp(config).listen(port, () => {
  console.log(`model server '${config.modelName}' listening on :${port}`);
});
