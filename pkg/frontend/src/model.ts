// Payload shapes mirrored from the review API. The console never mutates
// evidence fields; everything it displays comes verbatim from these records.

export interface PaperMeta {
  paper_id: string;
  title?: string;
  year?: number | null;
}

export interface Verdict {
  is_dataset: boolean;
  extracted_name?: string | null;
  backend?: string;
  confidence?: number | null;
}

export interface CandidateRecord {
  mention_id: string;
  language: string;
  citing: PaperMeta;
  cited: PaperMeta;
  context: string;
  direction: string;
  extracted_name?: string;
  verdict?: Verdict;
  state?: string;
  dataset_id?: string;
}

export interface QueueView {
  candidate: CandidateRecord | null;
  remaining: number;
  revision: number;
}

export type DecisionState =
  | "PENDING"
  | "CONFIRMED"
  | "UNCONFIRMABLE"
  | "NON_DATASET"
  | "MERGED";

export interface DecisionRequest {
  state: DecisionState;
  revision: number;
  note?: string;
  annotator_id?: string;
  reason?: string;
  canonical_name?: string;
}

export interface PipelineStats {
  total: number;
  pending: number;
  unconfirmable: number;
  non_dataset: number;
  genuine: number;
  merged_away: number;
  unique_datasets: number;
  languages_covered: number;
  precision_pct: number | null;
  revision: number;
}

export interface ProbeEvidence {
  dataset_id: string;
  url: string;
  final_url: string;
  http_status: number | null;
  outcome: string;
  content_kind: string;
  probed_at: string;
}

export interface DatasetRow {
  dataset_id: string;
  canonical_name: string;
  languages: string[];
  member_mention_ids: string[];
  accessibility: { status: string; confirmation?: boolean | null; note?: string } | null;
  probes: ProbeEvidence[];
}
