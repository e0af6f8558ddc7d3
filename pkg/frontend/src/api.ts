// HTTP + SSE client for the session service.

import type {
  ApiErrorBody,
  ObjectId,
  SamRating,
  ServerEvent,
  SessionView,
} from './types.js';

export class ApiError extends Error {
  code: string;
  status: number;

  constructor(code: string, status: number, message: string) {
    super(message);
    this.code = code;
    this.status = status;
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, {
    headers: { 'content-type': 'application/json' },
    ...init,
  });
  const text = await response.text();
  const body = text ? JSON.parse(text) : {};
  if (!response.ok) {
    const err = body as ApiErrorBody;
    throw new ApiError(
      err.error?.code ?? 'Unknown',
      response.status,
      err.error?.message ?? response.statusText,
    );
  }
  return body as T;
}

export function createSession(base: string): Promise<SessionView> {
  return request<SessionView>(`${base}/sessions`, {
    method: 'POST',
    body: JSON.stringify({}),
  });
}

export function getSession(base: string, id: string): Promise<SessionView> {
  return request<SessionView>(`${base}/sessions/${id}`);
}

export interface ChoiceResponse {
  ok: boolean;
  events: ServerEvent[];
  session: SessionView;
}

export function submitChoice(
  base: string,
  id: string,
  object: ObjectId,
): Promise<ChoiceResponse> {
  return request<ChoiceResponse>(`${base}/sessions/${id}/choice`, {
    method: 'POST',
    body: JSON.stringify({ object }),
  });
}

export function submitSurvey(
  base: string,
  id: string,
  rating: SamRating,
): Promise<{ ok: boolean }> {
  return request<{ ok: boolean }>(`${base}/sessions/${id}/survey`, {
    method: 'POST',
    body: JSON.stringify(rating),
  });
}

export interface StreamHandle {
  close(): void;
}

/** Subscribe to the session event stream, reconnecting from the last
 * seen sequence number after drops so no event is missed or repeated
 * (the reducer also drops duplicates by seq). */
export function openEventStream(
  base: string,
  id: string,
  fromSeq: number,
  onEvent: (seq: number, event: ServerEvent) => void,
  onConnection: (connected: boolean) => void,
): StreamHandle {
  let lastSeq = fromSeq;
  let closed = false;
  let source: EventSource | null = null;
  let retryTimer: ReturnType<typeof setTimeout> | null = null;

  const connect = () => {
    if (closed) return;
    source = new EventSource(`${base}/sessions/${id}/events?last_event=${lastSeq}`);
    source.onopen = () => onConnection(true);
    source.onmessage = (msg) => {
      const seq = Number(msg.lastEventId);
      const event = JSON.parse(msg.data) as ServerEvent;
      if (seq > lastSeq) {
        lastSeq = seq;
      }
      onEvent(seq, event);
      if (event.type === 'terminated') {
        close();
      }
    };
    source.onerror = () => {
      onConnection(false);
      source?.close();
      if (!closed) {
        retryTimer = setTimeout(connect, 1000);
      }
    };
  };

  const close = () => {
    closed = true;
    if (retryTimer !== null) clearTimeout(retryTimer);
    source?.close();
  };

  connect();
  return { close };
}
