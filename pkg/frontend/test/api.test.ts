import { describe, expect, it } from "vitest";

import { ApiError, StudioApi } from "../src/api";
import { StubService } from "./stub";

describe("StudioApi", () => {
  it("parses health and model payloads", async () => {
    const stub = new StubService();
    const api = new StudioApi("http://stub", stub.fetch);
    const health = await api.getHealth();
    expect(health.revision).toBe(0);
    const model = await api.getModel();
    expect(model.model.curves[0].name).toBe("arc");
    expect(model.revision).toBe(0);
  });

  it("turns error envelopes into ApiError", async () => {
    const stub = new StubService();
    const api = new StudioApi("http://stub", stub.fetch);
    const failure = api.getSamples("ghost", 10);
    await expect(failure).rejects.toBeInstanceOf(ApiError);
    await expect(failure).rejects.toMatchObject({ status: 404, code: "not_found" });
  });

  it("strips trailing slashes from the base address", async () => {
    const stub = new StubService();
    const api = new StudioApi("http://stub///", stub.fetch);
    await api.getHealth();
    expect(stub.log[0].path).toBe("/health");
  });

  it("sends PATCH bodies with exact coordinates", async () => {
    const stub = new StubService();
    const api = new StudioApi("http://stub", stub.fetch);
    const response = await api.patchControl("arc", 1, { x: 0.123456789012345, y: -2 });
    expect(response.revision).toBe(1);
    const logged = stub.log.find((r) => r.method === "PATCH");
    expect(logged?.body).toEqual({ x: 0.123456789012345, y: -2, z: 0 });
  });
});
