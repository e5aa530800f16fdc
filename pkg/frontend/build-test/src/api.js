// Thin typed client over the review API. Every mutation echoes the ledger
// revision the caller last saw; a 409 surfaces as ConflictError so the UI can
// refresh instead of silently overwriting someone else's decision.
export class ApiError extends Error {
    status;
    code;
    constructor(status, code, message) {
        super(message);
        this.status = status;
        this.code = code;
    }
}
export class ConflictError extends ApiError {
    constructor(code, message) {
        super(409, code, message);
    }
}
export class ApiClient {
    baseUrl;
    fetchImpl;
    constructor(baseUrl = "", options = {}) {
        this.baseUrl = baseUrl;
        this.token = options.token;
        this.fetchImpl = options.fetchImpl ?? ((input, init) => fetch(input, init));
    }
    token;
    async request(method, path, body) {
        const headers = { "Content-Type": "application/json" };
        if (this.token)
            headers["Authorization"] = `Bearer ${this.token}`;
        const response = await this.fetchImpl(this.baseUrl + path, {
            method,
            headers,
            body: body === undefined ? undefined : JSON.stringify(body),
        });
        if (!response.ok) {
            let code = "error";
            let message = `HTTP ${response.status}`;
            try {
                const payload = (await response.json());
                code = payload.code ?? code;
                message = payload.message ?? message;
            }
            catch {
                // non-JSON error body: keep the generic message
            }
            if (response.status === 409)
                throw new ConflictError(code, message);
            throw new ApiError(response.status, code, message);
        }
        return (await response.json());
    }
    queueNext() {
        return this.request("GET", "/api/queue/next");
    }
    candidate(mentionId) {
        return this.request("GET", `/api/candidates/${mentionId}`);
    }
    decide(mentionId, decision) {
        return this.request("POST", `/api/candidates/${mentionId}/decision`, decision);
    }
    merge(datasetId, sourceMentionIds, revision, note = "") {
        return this.request("POST", `/api/datasets/${datasetId}/merge`, {
            source_mention_ids: sourceMentionIds,
            revision,
            note,
        });
    }
    confirmAccessibility(datasetId, status, confirmation, note = "") {
        return this.request("POST", `/api/datasets/${datasetId}/accessibility`, {
            status,
            confirmation,
            note,
        });
    }
    stats() {
        return this.request("GET", "/api/stats");
    }
    datasets(language) {
        const suffix = language ? `?language=${encodeURIComponent(language)}` : "";
        return this.request("GET", `/api/datasets${suffix}`);
    }
}
