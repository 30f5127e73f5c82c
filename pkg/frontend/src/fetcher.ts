// Stale-response guard.  Each panel owns one LatestFetcher; every view change
// bumps the generation, and a response is applied only if no newer request
// started while it was in flight.  Without this, a slow fetch for an old view
// can land after a fast fetch for the current one and clobber the display.

export class LatestFetcher {
  private generation = 0;

  /** Generation of the most recent request (monotonic). */
  get current(): number {
    return this.generation;
  }

  /**
   * Run `load` and hand its result to `apply` unless a newer run() started
   * in the meantime.  Resolves true if applied, false if discarded as stale.
   * Errors from `load` reject only when still current; stale errors are
   * swallowed (the failed view is no longer on screen).
   */
  async run<T>(load: () => Promise<T>, apply: (value: T) => void): Promise<boolean> {
    const gen = ++this.generation;
    let value: T;
    try {
      value = await load();
    } catch (err) {
      if (gen !== this.generation) return false;
      throw err;
    }
    if (gen !== this.generation) return false;
    apply(value);
    return true;
  }

  /** Invalidate anything in flight without starting a new request. */
  cancel(): void {
    this.generation += 1;
  }
}
