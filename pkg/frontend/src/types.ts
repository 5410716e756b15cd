// Shapes of the documents the API serves. These mirror the server's JSON
// schema field for field; the UI never writes any of them back.

export type RowStatus = "UNCHANGED" | "MODIFIED" | "ADDED" | "REMOVED";

export interface AlignedRow {
  left: string | null;
  right: string | null;
  status: RowStatus;
}

export interface FileRow extends AlignedRow {
  left_line: number | null;
  right_line: number | null;
}

export interface Anchor {
  file_path: string;
  line: number;
}

export interface Signature {
  receiver: string | null;
  parameters: [string, string][];
  results: string[];
}

export interface CodeElement {
  kind: "FILE" | "TYPE_DECL" | "FUNCTION";
  name: string;
  qualified_name: string;
  file_path: string;
  start_line: number;
  end_line: number;
  signature?: Signature | null;
}

export interface Churn {
  added: number;
  deleted: number;
  total: number;
}

export interface Refactoring {
  id: string;
  kind: string;
  description: string;
  similarity: number;
  pair_label: string;
  before_anchor: Anchor | null;
  after_anchor: Anchor | null;
  before_element: CodeElement | null;
  after_element: CodeElement | null;
  aux_element: CodeElement | null;
  aligned: {
    rows: AlignedRow[];
    extracted_rows: AlignedRow[] | null;
    signature_delta: { before: Signature; after: Signature } | null;
  };
  metrics: {
    plain: Churn;
    enhanced: Churn;
    move: { same_file: boolean; distance_lines: number | null } | null;
  };
}

export interface FileDiff {
  status: "ADDED" | "DELETED" | "MODIFIED" | "RENAMED";
  path_before: string | null;
  path_after: string | null;
  binary: boolean;
  rows: FileRow[];
}

export interface PairEntry {
  label: { kind: "MAIN" | "COMMIT"; index: number | null; key: string };
  before: { id: string; short_label: string };
  after: { id: string; short_label: string };
  files: FileDiff[];
  refactorings: Refactoring[];
  timing: { wall_seconds: number };
}

export interface Report {
  schema_version: number;
  repo_id: string;
  change_set_id: string;
  created_at: string;
  detector_config: Record<string, number>;
  pairs: PairEntry[];
  summary: Record<string, unknown>;
}

export interface ReportKey {
  repo_id: string;
  change_set_id: string;
}

export type Side = "left" | "right";

export type EventKind =
  | "R_CLICK_LEFT"
  | "R_CLICK_RIGHT"
  | "GO_TO_SOURCE"
  | "WINDOW_OPEN"
  | "WINDOW_CLOSE";

export interface ReviewEvent {
  repo_id: string;
  change_set_id: string;
  refactoring_id: string;
  event: EventKind;
  at: string;
}
