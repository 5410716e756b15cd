import type { FileDiff, FileRow, PairEntry, Refactoring, Side } from "./types.js";
import { refTitle } from "./format.js";

export interface DiffView {
  el: HTMLElement;
  /** Row element for a given side + file path + 1-based line, if rendered. */
  rowFor(side: Side, filePath: string, line: number): HTMLElement | undefined;
}

function rowKey(side: Side, filePath: string, line: number): string {
  return JSON.stringify([side, filePath, line]);
}

function fileTitle(file: FileDiff): string {
  if (file.status === "RENAMED") {
    return `${file.path_before} → ${file.path_after}`;
  }
  return file.path_after ?? file.path_before ?? "(unnamed)";
}

function cellText(text: string | null): string {
  if (text === null) return "";
  return text.endsWith("\n") ? text.slice(0, -1) : text;
}

const CELL_CLASS: Record<FileRow["status"], [string, string]> = {
  UNCHANGED: ["", ""],
  MODIFIED: ["modified", "modified"],
  ADDED: ["empty", "added"],
  REMOVED: ["removed", "empty"],
};

export function renderPairDiff(
  pair: PairEntry,
  onRControl: (r: Refactoring, side: Side) => void,
): DiffView {
  const el = document.createElement("div");
  el.className = "diff-view";

  const rows = new Map<string, HTMLElement>();
  const gutters = new Map<string, HTMLElement>();
  const headerSlots: { left: Map<string, HTMLElement>; right: Map<string, HTMLElement> } = {
    left: new Map(),
    right: new Map(),
  };

  for (const file of pair.files) {
    const section = document.createElement("section");
    section.className = "diff-file";

    const header = document.createElement("header");
    header.className = "diff-file-header";
    const name = document.createElement("span");
    name.className = "diff-file-name";
    name.textContent = fileTitle(file);
    const status = document.createElement("span");
    status.className = `diff-file-status status-${file.status.toLowerCase()}`;
    status.textContent = file.status.toLowerCase();
    const badges = document.createElement("span");
    badges.className = "diff-file-badges";
    header.append(name, status, badges);
    section.append(header);
    if (file.path_before !== null) headerSlots.left.set(file.path_before, badges);
    if (file.path_after !== null) headerSlots.right.set(file.path_after, badges);

    if (file.binary) {
      const note = document.createElement("p");
      note.className = "diff-binary-note";
      note.textContent = "binary file — not shown";
      section.append(note);
      el.append(section);
      continue;
    }

    const table = document.createElement("table");
    table.className = "diff-table";
    const body = document.createElement("tbody");
    for (const row of file.rows) {
      const tr = document.createElement("tr");
      const [leftClass, rightClass] = CELL_CLASS[row.status];

      const gl = document.createElement("td");
      gl.className = "gutter";
      const gr = document.createElement("td");
      gr.className = "gutter";
      const cl = document.createElement("td");
      cl.className = `code ${leftClass}`.trim();
      const cr = document.createElement("td");
      cr.className = `code ${rightClass}`.trim();
      cl.textContent = cellText(row.left);
      cr.textContent = cellText(row.right);

      if (row.left_line !== null && file.path_before !== null) {
        gl.append(lineNo(row.left_line));
        rows.set(rowKey("left", file.path_before, row.left_line), tr);
        gutters.set(rowKey("left", file.path_before, row.left_line), gl);
      }
      if (row.right_line !== null && file.path_after !== null) {
        gr.append(lineNo(row.right_line));
        rows.set(rowKey("right", file.path_after, row.right_line), tr);
        gutters.set(rowKey("right", file.path_after, row.right_line), gr);
      }

      tr.append(gl, cl, gr, cr);
      body.append(tr);
    }
    table.append(body);
    const scroller = document.createElement("div");
    scroller.className = "diff-scroll";
    scroller.append(table);
    section.append(scroller);
    el.append(section);
  }

  // Drop the R controls in after every row exists. Controls land in the
  // gutter next to the line number; when several refactorings anchor on
  // the same line they stack horizontally in that gutter (which one a
  // reviewer means by "this line's refactoring" is genuinely ambiguous —
  // hover titles are the tiebreaker).
  for (const r of pair.refactorings) {
    placeControl(r, "left", r.before_anchor?.file_path, r.before_anchor?.line);
    placeControl(r, "right", r.after_anchor?.file_path, r.after_anchor?.line);
  }

  function placeControl(
    r: Refactoring,
    side: Side,
    filePath: string | undefined,
    line: number | undefined,
  ): void {
    if (filePath === undefined || line === undefined) return;
    let slot = gutters.get(rowKey(side, filePath, line));
    if (!slot) {
      // Anchor line outside the rendered hunks; keep the control reachable
      // from the file header rather than silently losing it.
      slot = headerSlots[side].get(filePath);
    }
    if (!slot) {
      console.warn(`anchor ${filePath}:${line} (${side}) matches no rendered file`);
      return;
    }
    const btn = document.createElement("button");
    btn.type = "button";
    btn.className = "r-control";
    btn.textContent = "R";
    btn.title = refTitle(r);
    btn.dataset.refactoringId = r.id;
    btn.dataset.side = side;
    btn.addEventListener("click", () => onRControl(r, side));
    slot.append(btn);
  }

  return {
    el,
    rowFor: (side, filePath, line) => rows.get(rowKey(side, filePath, line)),
  };
}

function lineNo(n: number): HTMLElement {
  const span = document.createElement("span");
  span.className = "lineno";
  span.textContent = String(n);
  return span;
}
