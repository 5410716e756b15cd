import type { Report, ReportKey } from "./types.js";

async function fetchJson<T>(url: string): Promise<T> {
  const res = await fetch(url);
  if (!res.ok) {
    let detail = `HTTP ${res.status}`;
    try {
      const body = await res.json();
      if (body?.error?.message) detail = `${detail}: ${body.error.message}`;
    } catch {
      // non-JSON error body; the status line is all we can report
    }
    throw new Error(`${url} failed (${detail})`);
  }
  return res.json() as Promise<T>;
}

export async function listReports(): Promise<ReportKey[]> {
  const doc = await fetchJson<{ reports: ReportKey[] }>("/api/v1/reports");
  return doc.reports;
}

export function getReport(key: ReportKey): Promise<Report> {
  return fetchJson<Report>(`/api/v1/reports/${key.repo_id}/${key.change_set_id}`);
}
