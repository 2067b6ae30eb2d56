/** Wire types of the v1 API (mirrors the server's JSON shapes). */

export interface Envelope<T> {
  data: T;
  license: string;
  generated_at: string;
  dataset_year: number;
}

export interface ProblemBody {
  error: string;
  detail: string;
}

export interface Indicators {
  citations: number;
  h_index: number;
  i10_index: number;
  popularity: number;
  influence: number;
  impulse: number;
  publications: number;
  datasets: number;
  /** Absent when the visible subset has no article / no dated work. */
  open_access_share?: number;
  academic_age?: number;
  fair_academic_age?: number;
}

export interface WorkScores {
  doi: string;
  citations: number;
  influence: number;
  popularity: number;
  impulse: number;
}

export interface WorkMeta {
  doi: string;
  title: string;
  venue: string | null;
  year: number | null;
  work_type: string;
  access: string;
}

export interface TrackRecordItem {
  doi: string;
  resolved: boolean;
  roles: string[];
  topics: string[];
  work: WorkMeta | null;
  scores: WorkScores | null;
}

export interface FacetCounts {
  topics: Record<string, number>;
  roles: Record<string, number>;
  availability: Record<string, number>;
  work_types: Record<string, number>;
}

export interface ProfileView {
  summary: {
    display_name: string;
    orcid_id: string;
    visibility: string;
    facets: FacetCounts;
    indicators: Indicators;
  };
  selection: {
    topics: string[];
    roles: string[];
    availability: string | null;
    work_types: string[];
  };
  track_record: TrackRecordItem[];
  page: number;
  page_size: number;
  total_entries: number;
  total_pages: number;
}

export interface IndicatorDoc {
  id: string;
  name: string;
  aspect: string;
  description: string;
  calculation: string;
  limitations: string;
  references: string[];
}

export interface InactivePeriod {
  start_year: number;
  end_year: number;
}

export interface ProfileSnapshot {
  orcid_id: string;
  display_name: string;
  visibility: string;
  entries: { doi: string; roles: string[]; topics: string[] }[];
  inactive_periods: InactivePeriod[];
}

/** The 14 CRediT roles, as the API's role slugs. */
export const CREDIT_ROLES: { slug: string; label: string }[] = [
  { slug: "conceptualization", label: "Conceptualization" },
  { slug: "data-curation", label: "Data curation" },
  { slug: "formal-analysis", label: "Formal analysis" },
  { slug: "funding-acquisition", label: "Funding acquisition" },
  { slug: "investigation", label: "Investigation" },
  { slug: "methodology", label: "Methodology" },
  { slug: "project-administration", label: "Project administration" },
  { slug: "resources", label: "Resources" },
  { slug: "software", label: "Software" },
  { slug: "supervision", label: "Supervision" },
  { slug: "validation", label: "Validation" },
  { slug: "visualization", label: "Visualization" },
  { slug: "writing-original-draft", label: "Writing (original draft)" },
  { slug: "writing-review-editing", label: "Writing (review & editing)" },
];
