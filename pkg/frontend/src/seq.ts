export class LatestOnly {
  private seq = 0;
  private controller: AbortController | null = null;

  begin(): { id: number; signal: AbortSignal } {
    if (this.controller) this.controller.abort();
    this.controller = new AbortController();
    this.seq += 1;
    return { id: this.seq, signal: this.controller.signal };
  }

  isCurrent(id: number): boolean {
    return id === this.seq;
  }
}
