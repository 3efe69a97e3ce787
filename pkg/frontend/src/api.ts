// Typed client for the review service. All verdict math happens on the
// backend; this file only moves JSON.

export type Judgment = "meaning_altered" | "meaning_preserved";
export type Outcome = "stopword" | "non_trivial" | "unresolved";

export interface SampleSpan {
  text: string;
  match: boolean;
}

export interface CandidateCard {
  term: string;
  position: number;
  samples: SampleSpan[][];
  my_judgment: Judgment | null;
}

export interface ReviewerProgress {
  reviewer: string;
  voted: number;
  total: number;
}

export interface CandidatePage {
  session: string;
  reviewer: string;
  cards: CandidateCard[];
  next_after: string | null;
  remaining: number;
  progress: ReviewerProgress;
}

export interface VoteAck {
  term: string;
  reviewer: string;
  judgment: Judgment;
  recorded_at: string;
}

export interface ProgressResponse {
  session: string;
  reviewers: ReviewerProgress[];
  n_candidates: number;
  resolved: number;
  unresolved: number;
}

export interface Verdict {
  term: string;
  outcome: Outcome;
  altered_count: number;
  vote_total: number;
}

export interface SessionInfo {
  id: string;
  reviewers: string[];
  n_candidates: number;
  created_at: string;
}

/** Backend answered with a non-2xx status (bad vote, unknown session...). */
export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

/** The request never reached the backend (offline, service restarting). */
export class NetworkError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "NetworkError";
  }
}

/** What the controller needs from the backend; ReviewApi is the real one. */
export interface ReviewClient {
  fetchSession(session: string): Promise<SessionInfo>;
  fetchCandidates(
    session: string,
    reviewer: string,
    opts?: { after?: string; limit?: number; includeVoted?: boolean },
  ): Promise<CandidatePage>;
  submitVote(
    session: string,
    reviewer: string,
    term: string,
    judgment: Judgment,
  ): Promise<VoteAck>;
  fetchProgress(session: string): Promise<ProgressResponse>;
  fetchVerdicts(session: string): Promise<{ session: string; verdicts: Verdict[] }>;
}

async function parseError(response: Response): Promise<ApiError> {
  let detail = response.statusText;
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === "string") detail = body.detail;
    else if (body.detail !== undefined) detail = JSON.stringify(body.detail);
  } catch {
    // non-JSON error body; keep statusText
  }
  return new ApiError(response.status, detail);
}

export class ReviewApi implements ReviewClient {
  constructor(private readonly baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, init);
    } catch (err) {
      throw new NetworkError(err instanceof Error ? err.message : String(err));
    }
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  fetchSession(session: string): Promise<SessionInfo> {
    return this.request(`/session/${encodeURIComponent(session)}`);
  }

  fetchCandidates(
    session: string,
    reviewer: string,
    opts: { after?: string; limit?: number; includeVoted?: boolean } = {},
  ): Promise<CandidatePage> {
    const params = new URLSearchParams({ reviewer });
    if (opts.after !== undefined) params.set("after", opts.after);
    if (opts.limit !== undefined) params.set("limit", String(opts.limit));
    if (opts.includeVoted) params.set("include_voted", "true");
    return this.request(
      `/session/${encodeURIComponent(session)}/candidates?${params.toString()}`,
    );
  }

  submitVote(
    session: string,
    reviewer: string,
    term: string,
    judgment: Judgment,
  ): Promise<VoteAck> {
    return this.request(`/session/${encodeURIComponent(session)}/votes`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ reviewer, term, judgment }),
    });
  }

  fetchProgress(session: string): Promise<ProgressResponse> {
    return this.request(`/session/${encodeURIComponent(session)}/progress`);
  }

  fetchVerdicts(session: string): Promise<{ session: string; verdicts: Verdict[] }> {
    return this.request(`/session/${encodeURIComponent(session)}/verdicts`);
  }
}
