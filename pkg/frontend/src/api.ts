/** Client for the workbench HTTP API.
 *
 * In-flight GETs of the same view are cancel-superseded: a newer request
 * aborts the older one, so the latest user action wins.
 */

import type { MeshDoc, PipelineRequest, SessionMeta, StatsDoc } from "./types";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class WorkbenchApi {
  private controllers = new Map<string, AbortController>();

  constructor(private base: string = "") {}

  private async request(path: string, init?: RequestInit, superseded?: string): Promise<Response> {
    let signal: AbortSignal | undefined;
    if (superseded) {
      this.controllers.get(superseded)?.abort();
      const controller = new AbortController();
      this.controllers.set(superseded, controller);
      signal = controller.signal;
    }
    const resp = await fetch(this.base + path, { ...init, signal });
    if (!resp.ok) {
      throw new ApiError(resp.status, await resp.text());
    }
    return resp;
  }

  async createSession(imageBytes: Blob | ArrayBuffer): Promise<SessionMeta> {
    const resp = await this.request("/sessions", { method: "POST", body: imageBytes });
    return resp.json();
  }

  async getSession(id: string): Promise<SessionMeta> {
    return (await this.request(`/sessions/${id}`)).json();
  }

  async runPipeline(id: string, req: PipelineRequest): Promise<SessionMeta> {
    const resp = await this.request(`/sessions/${id}/pipeline`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(req),
    });
    return resp.json();
  }

  async getStats(id: string): Promise<StatsDoc> {
    return (await this.request(`/sessions/${id}/artifacts/stats`, undefined, "stats")).json();
  }

  async getMesh(id: string, cluster: number): Promise<MeshDoc> {
    return (
      await this.request(`/sessions/${id}/artifacts/mesh/${cluster}`, undefined, `mesh-${cluster}`)
    ).json();
  }

  artifactUrl(id: string, kind: string, k?: number): string {
    const suffix = k === undefined ? "" : `/${k}`;
    return `${this.base}/sessions/${id}/artifacts/${kind}${suffix}`;
  }
}
