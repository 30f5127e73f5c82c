import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

function recordingClient(payload: unknown, status = 200) {
  const urls: string[] = [];
  const client = new ApiClient("", (url) => {
    urls.push(url);
    return Promise.resolve(
      new Response(JSON.stringify(payload), {
        status,
        headers: { "Content-Type": "application/json" },
      }),
    );
  });
  return { client, urls };
}

describe("api client", () => {
  it("builds series URLs with only the provided query params", async () => {
    const { client, urls } = recordingClient([]);
    await client.articles({ granularity: "weekly", from: "2020-03-02" });
    expect(urls).toEqual(["/v1/series/articles?granularity=weekly&from=2020-03-02"]);
  });

  it("sends no question mark when there are no params", async () => {
    const { client, urls } = recordingClient([]);
    await client.articles();
    expect(urls).toEqual(["/v1/series/articles"]);
  });

  it("percent-encodes path segments built from user values", async () => {
    const { client, urls } = recordingClient([]);
    await client.trends("loss of smell", "NY");
    expect(urls).toEqual(["/v1/series/trends/loss%20of%20smell/NY"]);
  });

  it("passes region through to outbreak series", async () => {
    const { client, urls } = recordingClient([]);
    await client.cases({ region: "DE" });
    expect(urls).toEqual(["/v1/series/cases?region=DE"]);
  });

  it("raises ApiError carrying the server's error code and message", async () => {
    const { client } = recordingClient(
      { error: "bad_granularity", message: "granularity must be daily or weekly" },
      400,
    );
    const err = await client.articles({ granularity: "hourly" as never }).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(400);
    expect(err.code).toBe("bad_granularity");
    expect(err.message).toBe("granularity must be daily or weekly");
  });

  it("copes with a non-JSON error body", async () => {
    const client = new ApiClient("", () =>
      Promise.resolve(new Response("<html>bad gateway</html>", { status: 502, statusText: "Bad Gateway" })),
    );
    const err = await client.manifest().catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(502);
    expect(err.code).toBe("http_error");
  });
});
