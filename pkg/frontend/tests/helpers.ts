import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { GraphNode, GraphPayload } from "../src/api.js";

const here = dirname(fileURLToPath(import.meta.url));

/** Load the real page skeleton into the jsdom document. */
export function mountPage(): void {
  const html = readFileSync(join(here, "..", "static", "index.html"), "utf8");
  const body = html.slice(html.indexOf("<body>") + 6, html.indexOf("<script"));
  document.body.innerHTML = body;
}

export function node(
  id: string,
  label: string,
  ports: string[],
  layer = 0,
  cls: "fo" | "ho" = "fo",
): GraphNode {
  return { id, label, class: cls, ports, layer };
}

export function payload(
  nodes: GraphNode[],
  edges: GraphPayload["edges"],
  digest = "d0",
  normalForm = false,
): GraphPayload {
  return {
    digest,
    normal_form: normalForm,
    nodes,
    edges,
    interface: [],
  };
}
