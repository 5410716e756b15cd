import type { Anchor, Refactoring, Signature } from "./types.js";

/** "MOVE_FUNCTION" -> "Move Function". */
export function kindLabel(kind: string): string {
  return kind
    .toLowerCase()
    .split("_")
    .map((w) => (w ? w[0].toUpperCase() + w.slice(1) : w))
    .join(" ");
}

export function anchorText(a: Anchor | null): string {
  return a ? `${a.file_path}:${a.line}` : "—";
}

/** One-line header for a refactoring, e.g.
 *  "Move Function — m1 moved from a.go:6 to b.go:5". */
export function refTitle(r: Refactoring): string {
  return `${kindLabel(r.kind)} — ${r.description}`;
}

export function signatureText(sig: Signature): string {
  const params = sig.parameters.map(([n, t]) => `${n} ${t}`).join(", ");
  const recv = sig.receiver ? `(${sig.receiver}) ` : "";
  const results =
    sig.results.length === 0
      ? ""
      : sig.results.length === 1
        ? ` ${sig.results[0]}`
        : ` (${sig.results.join(", ")})`;
  return `${recv}(${params})${results}`;
}
