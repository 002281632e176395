/** Application wiring: one session against the service, rendered live.
 *
 * The server is the single source of truth.  Every mutation round-trips:
 * the client sends the digest its redex list was computed for, and on a 409
 * (someone else moved the session forward) it shows a toast and refreshes
 * instead of guessing.  The client keeps no graph state beyond the last
 * payload and the layout derived from it.
 */
import { ApiError, Client, } from "./api.js";
import { renderGraph } from "./render.js";
import { renderDerivation, renderRedexList, setBadge, showToast, } from "./panels.js";
export class App {
    constructor(doc, baseUrl = "") {
        this.doc = doc;
        this.session = null;
        this.initialDigest = null;
        this.graph = null;
        this.redexes = [];
        /** Digest token the current redex list was served for. */
        this.listDigest = null;
        this.fresh = new Set();
        this.pending = Promise.resolve();
        this.client = new Client(baseUrl);
    }
    /** Resolves when every in-flight action has settled (for tests). */
    whenIdle() {
        return this.pending;
    }
    /** Kick off start-up inside the tracking chain, surfacing failures. */
    run() {
        this.track(this.start());
    }
    track(work) {
        const settled = work.catch((error) => this.showError(error));
        this.pending = this.pending.then(() => settled);
        return settled;
    }
    element(id) {
        const found = this.doc.getElementById(id);
        if (!found)
            throw new Error(`missing element #${id}`);
        return found;
    }
    get canvas() {
        return this.element("canvas");
    }
    async start() {
        const select = this.element("fixture-select");
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
    async loadFixture(name) {
        const created = await this.client.createSession(name);
        this.session = created.id;
        this.initialDigest = created.graph.digest;
        this.fresh = new Set();
        this.element("export-json").textContent = "";
        await this.afterChange(created.graph);
    }
    /** Re-fetch graph and redexes; render everything from the payloads. */
    async refresh() {
        if (!this.session)
            return;
        this.fresh = new Set();
        await this.afterChange(await this.client.graph(this.session));
    }
    async afterChange(graph) {
        if (!this.session)
            return;
        this.graph = graph;
        const list = await this.client.redexes(this.session);
        this.redexes = list.redexes;
        this.listDigest = list.digest;
        const derivation = await this.client.derivation(this.session);
        this.renderAll();
        renderDerivation(this.element("derivation"), derivation);
    }
    renderAll(highlight) {
        if (!this.graph)
            return;
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
    async applyRedex(index) {
        if (!this.session || this.listDigest === null)
            return;
        try {
            const result = await this.client.apply(this.session, index, this.listDigest);
            this.fresh = new Set(result.diff.added_nodes);
            await this.afterChange(result.graph);
        }
        catch (error) {
            if (error instanceof ApiError && error.status === 409) {
                showToast(this.element("toast"), "the graph moved on — refreshing the redex list");
                await this.refresh();
                return;
            }
            throw error;
        }
    }
    async undo() {
        if (!this.session)
            return;
        try {
            this.fresh = new Set();
            await this.afterChange(await this.client.undo(this.session));
        }
        catch (error) {
            if (error instanceof ApiError && error.status === 409) {
                showToast(this.element("toast"), "nothing to undo");
                return;
            }
            throw error;
        }
    }
    /** Fetch the derivation and present it verbatim for saving. */
    async exportDerivation() {
        if (!this.session)
            return;
        const derivation = await this.client.derivation(this.session);
        const text = JSON.stringify(derivation);
        this.element("export-json").textContent = text;
        const link = this.element("export-link");
        link.href = `data:application/json,${encodeURIComponent(text)}`;
        link.hidden = false;
    }
    showError(error) {
        const message = error instanceof ApiError
            ? `request failed (${error.status}): ${JSON.stringify(error.payload)}`
            : String(error);
        showToast(this.element("toast"), message);
    }
}
export function bootstrap(doc, baseUrl = "") {
    const app = new App(doc, baseUrl);
    app.run();
    return app;
}
