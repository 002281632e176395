/** Application wiring: one session against the service, rendered live.
 *
 * The server is the single source of truth.  Every mutation round-trips:
 * the client sends the digest its redex list was computed for, and on a 409
 * (someone else moved the session forward) it shows a toast and refreshes
 * instead of guessing.  The client keeps no graph state beyond the last
 * payload and the layout derived from it.
 */

import {
  ApiError,
  Client,
  type GraphPayload,
  type RedexSummary,
} from "./api.js";
import { renderGraph } from "./render.js";
import {
  renderDerivation,
  renderRedexList,
  setBadge,
  showToast,
} from "./panels.js";

export class App {
  readonly client: Client;
  session: string | null = null;
  initialDigest: string | null = null;
  graph: GraphPayload | null = null;
  redexes: RedexSummary[] = [];
  /** Digest token the current redex list was served for. */
  private listDigest: string | null = null;
  private fresh: Set<string> = new Set();
  private pending: Promise<unknown> = Promise.resolve();

  constructor(
    private readonly doc: Document,
    baseUrl = "",
  ) {
    this.client = new Client(baseUrl);
  }

  /** Resolves when every in-flight action has settled (for tests). */
  whenIdle(): Promise<unknown> {
    return this.pending;
  }

  /** Kick off start-up inside the tracking chain, surfacing failures. */
  run(): void {
    this.track(this.start());
  }

  private track<T>(work: Promise<T>): Promise<T | void> {
    const settled = work.catch((error) => this.showError(error));
    this.pending = this.pending.then(() => settled);
    return settled;
  }

  private element<T extends HTMLElement>(id: string): T {
    const found = this.doc.getElementById(id);
    if (!found) throw new Error(`missing element #${id}`);
    return found as T;
  }

  private get canvas(): SVGSVGElement {
    return this.element<HTMLElement>("canvas") as unknown as SVGSVGElement;
  }

  async start(): Promise<void> {
    const select = this.element<HTMLSelectElement>("fixture-select");
    const { fixtures } = await this.client.listFixtures();
    select.replaceChildren();
    for (const name of fixtures) {
      const option = this.doc.createElement("option");
      option.value = name;
      option.textContent = name;
      select.append(option);
    }
    this.element("load-btn").addEventListener("click", () => {
      this.track(this.loadFixture(select.value));
    });
    this.element("undo-btn").addEventListener("click", () => {
      this.track(this.undo());
    });
    this.element("export-btn").addEventListener("click", () => {
      this.track(this.exportDerivation());
    });
  }

  async loadFixture(name: string): Promise<void> {
    const created = await this.client.createSession(name);
    this.session = created.id;
    this.initialDigest = created.graph.digest;
    this.fresh = new Set();
    this.element("export-json").textContent = "";
    await this.afterChange(created.graph);
  }

  /** Re-fetch graph and redexes; render everything from the payloads. */
  async refresh(): Promise<void> {
    if (!this.session) return;
    this.fresh = new Set();
    await this.afterChange(await this.client.graph(this.session));
  }

  private async afterChange(graph: GraphPayload): Promise<void> {
    if (!this.session) return;
    this.graph = graph;
    const list = await this.client.redexes(this.session);
    this.redexes = list.redexes;
    this.listDigest = list.digest;
    const derivation = await this.client.derivation(this.session);
    this.renderAll();
    renderDerivation(this.element("derivation"), derivation);
  }

  private renderAll(highlight?: Set<string>): void {
    if (!this.graph) return;
    renderGraph(this.canvas, this.graph, {
      highlight,
      fresh: this.fresh,
    });
    renderRedexList(this.element("redex-list"), this.redexes, {
      onApply: (index) => {
        this.track(this.applyRedex(index));
      },
      onHover: (redex) => {
        this.renderAll(redex ? new Set(redex.highlight.nodes) : undefined);
      },
    });
    setBadge(this.element("badge"), this.graph.normal_form);
    this.element("digest").textContent = this.graph.digest;
  }

  async applyRedex(index: number): Promise<void> {
    if (!this.session || this.listDigest === null) return;
    try {
      const result = await this.client.apply(
        this.session,
        index,
        this.listDigest,
      );
      this.fresh = new Set(result.diff.added_nodes);
      await this.afterChange(result.graph);
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        showToast(
          this.element("toast"),
          "the graph moved on — refreshing the redex list",
        );
        await this.refresh();
        return;
      }
      throw error;
    }
  }

  async undo(): Promise<void> {
    if (!this.session) return;
    try {
      this.fresh = new Set();
      await this.afterChange(await this.client.undo(this.session));
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        showToast(this.element("toast"), "nothing to undo");
        return;
      }
      throw error;
    }
  }

  /** Fetch the derivation and present it verbatim for saving. */
  async exportDerivation(): Promise<void> {
    if (!this.session) return;
    const derivation = await this.client.derivation(this.session);
    const text = JSON.stringify(derivation);
    this.element("export-json").textContent = text;
    const link = this.element<HTMLAnchorElement>("export-link");
    link.href = `data:application/json,${encodeURIComponent(text)}`;
    link.hidden = false;
  }

  private showError(error: unknown): void {
    const message =
      error instanceof ApiError
        ? `request failed (${error.status}): ${JSON.stringify(error.payload)}`
        : String(error);
    showToast(this.element("toast"), message);
  }
}

export function bootstrap(doc: Document, baseUrl = ""): App {
  const app = new App(doc, baseUrl);
  app.run();
  return app;
}
