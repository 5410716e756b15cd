import type { EventKind, ReportKey, ReviewEvent } from "./types.js";

// Event delivery is fire-and-forget: nothing in the UI waits on it. A
// single promise chain still serializes the POSTs so the server's log
// keeps click order. Failed posts get one retry, then are dropped.

let chain: Promise<void> = Promise.resolve();

const RETRY_DELAY_MS = 300;

function postOnce(ev: ReviewEvent): Promise<void> {
  return fetch("/api/v1/events", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(ev),
  }).then((res) => {
    if (!res.ok) throw new Error(`event post failed (HTTP ${res.status})`);
  });
}

export function recordEvent(
  scope: ReportKey,
  refactoringId: string,
  kind: EventKind,
): void {
  const ev: ReviewEvent = {
    repo_id: scope.repo_id,
    change_set_id: scope.change_set_id,
    refactoring_id: refactoringId,
    event: kind,
    at: new Date().toISOString(),
  };
  chain = chain
    .then(() => postOnce(ev))
    .catch(
      () =>
        new Promise<void>((resolve) => setTimeout(resolve, RETRY_DELAY_MS))
          .then(() => postOnce(ev)),
    )
    .catch((err) => {
      console.warn(`dropping ${ev.event} for ${ev.refactoring_id}:`, err);
    });
}

/** Resolves once every event recorded so far has been posted or dropped. */
export function eventsFlushed(): Promise<void> {
  return chain;
}
