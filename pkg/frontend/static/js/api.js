/** Typed client for the rewriting service's REST API. */
export class ApiError extends Error {
    constructor(status, payload) {
        super(`request failed with status ${status}`);
        this.status = status;
        this.payload = payload;
        this.name = "ApiError";
    }
}
export class Client {
    constructor(base = "") {
        this.base = base;
    }
    async request(method, path, body) {
        const response = await fetch(this.base + path, {
            method,
            headers: body === undefined ? {} : { "Content-Type": "application/json" },
            body: body === undefined ? undefined : JSON.stringify(body),
        });
        const data = await response.json().catch(() => null);
        if (!response.ok) {
            throw new ApiError(response.status, data);
        }
        return data;
    }
    listFixtures() {
        return this.request("GET", "/fixtures");
    }
    createSession(fixture) {
        return this.request("POST", "/sessions", { fixture });
    }
    graph(session) {
        return this.request("GET", `/sessions/${session}/graph`);
    }
    redexes(session) {
        return this.request("GET", `/sessions/${session}/redexes`);
    }
    apply(session, index, digest) {
        return this.request("POST", `/sessions/${session}/apply`, {
            index,
            digest,
        });
    }
    undo(session) {
        return this.request("POST", `/sessions/${session}/undo`);
    }
    derivation(session) {
        return this.request("GET", `/sessions/${session}/derivation`);
    }
}
