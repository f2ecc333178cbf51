/**
 * Wire types for the session API.
 *
 * These mirror the backend's JSON payloads exactly; the client never
 * reinterprets them.  Field names intentionally match the wire format.
 */

export interface VertexDoc {
  id: number;
  frozen: boolean;
}

export interface ArrowDoc {
  id: string;
  tail: number;
  head: number;
  frozen: boolean;
}

export interface PotentialTermDoc {
  coeff: string;
  cycle: string[];
}

/** An ice quiver with potential, as serialized by the backend. */
export interface IqpDocument {
  vertices: VertexDoc[];
  arrows: ArrowDoc[];
  potential: PotentialTermDoc[];
}

export interface RigidityDoc {
  rigid: boolean;
  bound: number;
  witness: string[] | null;
}

export interface MutationReport {
  vertex: number;
  two_cycles_created: string[][];
  fz_agreement: boolean;
  rigidity: RigidityDoc;
}

export interface Diagnostics {
  mutable_vertices: number[];
  mutability: Record<string, boolean>;
  unfrozen_two_cycles: string[][];
  is_reduced: boolean;
  truncation: number;
}

/** Full session state as returned by GET /sessions/{id} and mutate/undo. */
export interface SessionPayload {
  id: string;
  current: IqpDocument;
  /** Canonical serialization of `current`; exports return this verbatim. */
  serialized: string;
  history: MutationReport[];
  diagnostics: Diagnostics;
  report?: MutationReport;
}

export interface AnalysisPayload {
  hom_dims: {
    truncation: number;
    vertices: number[];
    matrix: number[][];
    total: number;
  };
  gabriel_quiver: IqpDocument;
  rigidity: RigidityDoc;
  reduced: boolean;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  detail?: string;
}
