/** Typed client for the rewriting service's REST API. */

export type EdgeEnd = [string, number];
export type Edge = [EdgeEnd, EdgeEnd];

export interface GraphNode {
  id: string;
  label: string;
  class: "fo" | "ho";
  ports: string[];
  layer: number;
}

export interface GraphPayload {
  digest: string;
  normal_form: boolean;
  nodes: GraphNode[];
  edges: Edge[];
  interface: EdgeEnd[];
}

export interface RedexSummary {
  index: number;
  rule: string;
  nodes: string[];
  morphism: unknown;
  highlight: { nodes: string[]; edges: Edge[] };
}

export interface RedexList {
  digest: string;
  redexes: RedexSummary[];
}

export interface Diff {
  removed_nodes: string[];
  added_nodes: string[];
  reconnected: [EdgeEnd, EdgeEnd][];
  freed_ports: EdgeEnd[];
  vanished_edges: Edge[];
}

export interface ApplyResult {
  applied: { rule: string; index: number };
  diff: Diff;
  graph: GraphPayload;
}

export interface SessionCreated {
  id: string;
  fixture: string | null;
  rules: string[];
  graph: GraphPayload;
}

export interface DerivationStep {
  rule: string;
  morphism: unknown;
  digest_after: string;
}

export interface Derivation {
  initial_digest: string;
  steps: DerivationStep[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly payload: unknown,
  ) {
    super(`request failed with status ${status}`);
    this.name = "ApiError";
  }
}

export class Client {
  constructor(private readonly base: string = "") {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const response = await fetch(this.base + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const data = await response.json().catch(() => null);
    if (!response.ok) {
      throw new ApiError(response.status, data);
    }
    return data as T;
  }

  listFixtures(): Promise<{ fixtures: string[] }> {
    return this.request("GET", "/fixtures");
  }

  createSession(fixture: string): Promise<SessionCreated> {
    return this.request("POST", "/sessions", { fixture });
  }

  graph(session: string): Promise<GraphPayload> {
    return this.request("GET", `/sessions/${session}/graph`);
  }

  redexes(session: string): Promise<RedexList> {
    return this.request("GET", `/sessions/${session}/redexes`);
  }

  apply(session: string, index: number, digest: string): Promise<ApplyResult> {
    return this.request("POST", `/sessions/${session}/apply`, {
      index,
      digest,
    });
  }

  undo(session: string): Promise<GraphPayload> {
    return this.request("POST", `/sessions/${session}/undo`);
  }

  derivation(session: string): Promise<Derivation> {
    return this.request("GET", `/sessions/${session}/derivation`);
  }
}
