import { getReport, listReports } from "./api.js";
import { renderPairDiff, type DiffView } from "./diffView.js";
import { recordEvent } from "./events.js";
import { buildFloatWindow } from "./floatWindow.js";
import { renderToolbar } from "./toolbar.js";
import type { PairEntry, Refactoring, Report, ReportKey, Side } from "./types.js";

interface ViewState {
  key: ReportKey | null;
  report: Report | null;
  pairKey: string | null;
  /** Open floating window: refactoring id, or null. Never more than one. */
  openWindow: string | null;
  /** Whether WINDOW_OPEN was posted for the open window (a not-found
   *  notice posts nothing, so its close must post nothing either). */
  openPosted: boolean;
  scrollByPair: Map<string, number>;
}

export interface AppHandle {
  state: ViewState;
  ready: Promise<void>;
  openWindow(id: string): void;
  closeWindow(): void;
  selectPair(key: string): void;
}

export function initApp(root: HTMLElement): AppHandle {
  const state: ViewState = {
    key: null,
    report: null,
    pairKey: null,
    openWindow: null,
    openPosted: false,
    scrollByPair: new Map(),
  };

  root.textContent = "";
  const shell = document.createElement("div");
  shell.className = "app";
  const header = document.createElement("header");
  header.className = "app-header";
  const brand = document.createElement("span");
  brand.className = "app-brand";
  brand.textContent = "refaware review";
  const reportSelect = document.createElement("select");
  reportSelect.className = "report-select";
  const pairSelect = document.createElement("select");
  pairSelect.className = "pair-select";
  header.append(brand, reportSelect, pairSelect);
  const main = document.createElement("div");
  main.className = "app-main";
  shell.append(header, main);
  root.append(shell);

  let reportKeys: ReportKey[] = [];
  let diffView: DiffView | null = null;
  let windowEl: HTMLElement | null = null;

  function showError(message: string): void {
    // The banner replaces the content area outright: a half-rendered diff
    // is worse than none.
    main.textContent = "";
    const banner = document.createElement("div");
    banner.className = "error-banner";
    banner.textContent = message;
    main.append(banner);
  }

  function selectedPair(): PairEntry | null {
    if (!state.report) return null;
    return (
      state.report.pairs.find((p) => p.label.key === state.pairKey) ?? null
    );
  }

  function findRefactoring(id: string): Refactoring | undefined {
    return selectedPair()?.refactorings.find((r) => r.id === id);
  }

  function closeWindow(): void {
    if (state.openWindow === null) return;
    if (state.openPosted && state.key) {
      recordEvent(state.key, state.openWindow, "WINDOW_CLOSE");
    }
    windowEl?.remove();
    windowEl = null;
    state.openWindow = null;
    state.openPosted = false;
  }

  function openWindow(id: string): void {
    if (state.openWindow === id) return;
    closeWindow();
    const r = findRefactoring(id);
    state.openWindow = id;
    state.openPosted = r !== undefined;
    if (r && state.key) {
      recordEvent(state.key, id, "WINDOW_OPEN");
    }
    windowEl = buildFloatWindow({
      refactoring: r,
      requestedId: id,
      onClose: closeWindow,
      onGoToSource: (side) => goToSource(id, side),
    });
    shell.append(windowEl);
  }

  function goToSource(id: string, side: Side): void {
    const r = findRefactoring(id);
    if (!r) return;
    const anchor = side === "left" ? r.before_anchor : r.after_anchor;
    if (!anchor || !state.key) return;
    recordEvent(state.key, id, "GO_TO_SOURCE");
    const row = diffView?.rowFor(side, anchor.file_path, anchor.line);
    if (!row) return;
    row.classList.add("jump-flash");
    setTimeout(() => row.classList.remove("jump-flash"), 1200);
    try {
      row.scrollIntoView({ block: "center" });
    } catch {
      // headless test DOM has no layout
    }
  }

  function onRControl(r: Refactoring, side: Side): void {
    if (state.key) {
      recordEvent(state.key, r.id, side === "left" ? "R_CLICK_LEFT" : "R_CLICK_RIGHT");
    }
    openWindow(r.id);
  }

  function pairLabel(pair: PairEntry): string {
    const range = `${pair.before.short_label}..${pair.after.short_label}`;
    return pair.label.kind === "MAIN"
      ? `whole change set (${range})`
      : `commit ${pair.label.index}: ${range}`;
  }

  function renderPair(): void {
    const pair = selectedPair();
    closeWindow();
    main.textContent = "";
    if (!pair) {
      showError("report has no revision pairs");
      return;
    }
    main.append(renderToolbar(pair.refactorings, (r) => openWindow(r.id)));
    diffView = renderPairDiff(pair, onRControl);
    main.append(diffView.el);
    const y = state.scrollByPair.get(pair.label.key) ?? 0;
    if (y > 0) {
      try {
        window.scrollTo(0, y);
      } catch {
        // headless test DOM
      }
    }
  }

  function selectPair(key: string): void {
    if (state.pairKey !== null) {
      state.scrollByPair.set(state.pairKey, window.scrollY ?? 0);
    }
    state.pairKey = key;
    pairSelect.value = key;
    renderPair();
  }

  async function loadReport(key: ReportKey): Promise<void> {
    try {
      const report = await getReport(key);
      state.key = key;
      state.report = report;
      state.scrollByPair.clear();
      pairSelect.textContent = "";
      for (const pair of report.pairs) {
        const opt = document.createElement("option");
        opt.value = pair.label.key;
        opt.textContent = pairLabel(pair);
        pairSelect.append(opt);
      }
      const first = report.pairs[0];
      state.pairKey = first ? first.label.key : null;
      renderPair();
    } catch (err) {
      showError(String(err));
    }
  }

  reportSelect.addEventListener("change", () => {
    const key = reportKeys[reportSelect.selectedIndex];
    if (key) void loadReport(key);
  });
  pairSelect.addEventListener("change", () => selectPair(pairSelect.value));

  const ready = (async () => {
    try {
      reportKeys = await listReports();
    } catch (err) {
      showError(String(err));
      return;
    }
    for (const key of reportKeys) {
      const opt = document.createElement("option");
      opt.value = `${key.repo_id}/${key.change_set_id}`;
      opt.textContent = `${key.repo_id} · ${key.change_set_id}`;
      reportSelect.append(opt);
    }
    if (reportKeys.length === 0) {
      const empty = document.createElement("p");
      empty.className = "empty-note";
      empty.textContent =
        "No reports stored yet. Run an analysis with --store, then reload.";
      main.append(empty);
      return;
    }
    await loadReport(reportKeys[0]);
  })();

  return { state, ready, openWindow, closeWindow, selectPair };
}
