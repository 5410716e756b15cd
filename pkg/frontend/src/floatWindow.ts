import type { AlignedRow, Refactoring, Side } from "./types.js";
import { anchorText, kindLabel, signatureText } from "./format.js";

export interface FloatWindowOptions {
  refactoring: Refactoring | undefined; // undefined: id not in the loaded report
  requestedId: string;
  onClose: () => void;
  onGoToSource: (side: Side) => void;
}

const ROW_CLASS: Record<AlignedRow["status"], string> = {
  UNCHANGED: "",
  MODIFIED: "modified",
  ADDED: "added",
  REMOVED: "removed",
};

function alignedTable(rows: AlignedRow[]): HTMLTableElement {
  const table = document.createElement("table");
  table.className = "aligned-table";
  const body = document.createElement("tbody");
  for (const row of rows) {
    const tr = document.createElement("tr");
    tr.className = ROW_CLASS[row.status];
    const left = document.createElement("td");
    const right = document.createElement("td");
    left.className = "code";
    right.className = "code";
    left.textContent = row.left?.replace(/\n$/, "") ?? "";
    right.textContent = row.right?.replace(/\n$/, "") ?? "";
    tr.append(left, right);
    body.append(tr);
  }
  table.append(body);
  return table;
}

export function buildFloatWindow(opts: FloatWindowOptions): HTMLElement {
  const win = document.createElement("div");
  win.className = "float-window";
  win.setAttribute("role", "dialog");

  const bar = document.createElement("header");
  bar.className = "float-window-bar";
  const title = document.createElement("span");
  title.className = "float-window-title";
  const close = document.createElement("button");
  close.type = "button";
  close.className = "float-window-close";
  close.textContent = "×";
  close.title = "Close";
  close.addEventListener("click", opts.onClose);
  bar.append(title, close);
  win.append(bar);

  const r = opts.refactoring;
  if (!r) {
    title.textContent = "Refactoring not found";
    const note = document.createElement("p");
    note.className = "window-missing";
    note.textContent = `"${opts.requestedId}" is not part of the loaded report; it may come from an older analysis.`;
    win.append(note);
    makeDraggable(win, bar);
    return win;
  }

  title.textContent = `${kindLabel(r.kind)} — ${r.description}`;

  const meta = document.createElement("div");
  meta.className = "float-window-meta";
  meta.append(
    metaRow("source", r.before_anchor && anchorText(r.before_anchor), () =>
      opts.onGoToSource("left"),
    ),
    metaRow("target", r.after_anchor && anchorText(r.after_anchor), () =>
      opts.onGoToSource("right"),
    ),
  );
  const cost = document.createElement("p");
  cost.className = "float-window-cost";
  const { plain, enhanced } = r.metrics;
  cost.textContent =
    `review cost ${enhanced.total} line${enhanced.total === 1 ? "" : "s"}` +
    ` (raw diff ${plain.total}) · similarity ${(r.similarity * 100).toFixed(1)}%`;
  meta.append(cost);
  win.append(meta);

  if (r.aligned.signature_delta) {
    const sig = document.createElement("p");
    sig.className = "float-window-signature";
    sig.textContent =
      `signature: ${signatureText(r.aligned.signature_delta.before)}` +
      ` → ${signatureText(r.aligned.signature_delta.after)}`;
    win.append(sig);
  }

  const bodyScroll = document.createElement("div");
  bodyScroll.className = "float-window-body";
  bodyScroll.append(alignedTable(r.aligned.rows));

  if (r.aligned.extracted_rows) {
    const divider = document.createElement("h3");
    divider.className = "extracted-heading";
    divider.textContent = r.aux_element
      ? `extracted body — ${r.aux_element.name}`
      : "extracted body";
    const extracted = alignedTable(r.aligned.extracted_rows);
    extracted.classList.add("extracted-body");
    bodyScroll.append(divider, extracted);
  }
  win.append(bodyScroll);

  makeDraggable(win, bar);
  return win;
}

function metaRow(
  label: string,
  anchor: string | null,
  onGo: () => void,
): HTMLElement {
  const row = document.createElement("div");
  row.className = "float-window-anchor";
  const text = document.createElement("span");
  text.textContent = `${label}: ${anchor ?? "—"}`;
  row.append(text);
  if (anchor) {
    const btn = document.createElement("button");
    btn.type = "button";
    btn.className = "goto-source";
    btn.textContent = "Go to source";
    btn.addEventListener("click", onGo);
    row.append(btn);
  }
  return row;
}

function makeDraggable(win: HTMLElement, handle: HTMLElement): void {
  let startX = 0;
  let startY = 0;
  let baseLeft = 0;
  let baseTop = 0;

  handle.addEventListener("pointerdown", (down) => {
    if ((down.target as HTMLElement).closest("button")) return;
    down.preventDefault();
    const rect = win.getBoundingClientRect();
    baseLeft = rect.left;
    baseTop = rect.top;
    startX = down.clientX;
    startY = down.clientY;

    const move = (ev: PointerEvent) => {
      win.style.left = `${baseLeft + ev.clientX - startX}px`;
      win.style.top = `${Math.max(0, baseTop + ev.clientY - startY)}px`;
      win.style.right = "auto";
      win.style.transform = "none";
    };
    const up = () => {
      window.removeEventListener("pointermove", move);
      window.removeEventListener("pointerup", up);
    };
    window.addEventListener("pointermove", move);
    window.addEventListener("pointerup", up);
  });
}
