import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';

import { openEventStream } from '../src/api.js';
import type { ServerEvent } from '../src/types.js';

type Handler = ((ev: MessageEvent) => void) | null;

class FakeEventSource {
  static instances: FakeEventSource[] = [];
  url: string;
  onopen: (() => void) | null = null;
  onmessage: Handler = null;
  onerror: (() => void) | null = null;
  closed = false;

  constructor(url: string) {
    this.url = url;
    FakeEventSource.instances.push(this);
  }

  emit(seq: number, event: ServerEvent): void {
    this.onmessage?.({ lastEventId: String(seq), data: JSON.stringify(event) } as MessageEvent);
  }

  fail(): void {
    this.onerror?.();
  }

  close(): void {
    this.closed = true;
  }
}

beforeEach(() => {
  FakeEventSource.instances = [];
  vi.stubGlobal('EventSource', FakeEventSource);
  vi.useFakeTimers();
});

afterEach(() => {
  vi.useRealTimers();
  vi.unstubAllGlobals();
});

describe('event stream reconnect', () => {
  it('reopens from the last seen sequence number after a drop', () => {
    const seen: number[] = [];
    openEventStream('', 's1', 0, (seq) => seen.push(seq), () => {});
    const first = FakeEventSource.instances[0];
    expect(first.url).toContain('last_event=0');
    first.emit(1, { type: 'phase', phase: 'need_arises' });
    first.emit(2, { type: 'babble', word: 'nana' });
    first.fail();
    vi.advanceTimersByTime(1100);
    const second = FakeEventSource.instances[1];
    expect(second.url).toContain('last_event=2');
    second.emit(3, { type: 'phase', phase: 'awaiting_object' });
    expect(seen).toEqual([1, 2, 3]);
  });

  it('closes for good once terminated arrives', () => {
    const handle = openEventStream('', 's1', 0, () => {}, () => {});
    const source = FakeEventSource.instances[0];
    source.emit(1, { type: 'terminated', converged: false });
    expect(source.closed).toBe(true);
    source.fail();
    vi.advanceTimersByTime(5000);
    expect(FakeEventSource.instances).toHaveLength(1); // no reconnect
    handle.close();
  });

  it('stops reconnecting after an explicit close', () => {
    const handle = openEventStream('', 's1', 0, () => {}, () => {});
    FakeEventSource.instances[0].fail();
    handle.close();
    vi.advanceTimersByTime(5000);
    expect(FakeEventSource.instances).toHaveLength(1);
  });
});
