/** Wire types mirroring the server's JSON payloads. */

export interface ViewVertex {
  id: string;
  label: string;
  weight: number;
  support: string[];
}

export interface ViewEdge {
  u: string;
  v: string;
  weight: number;
  support: string[];
}

export interface ViewPayload {
  l_c: string[];
  l_b: string[];
  filter: string[];
  vertices: ViewVertex[];
  edges: ViewEdge[];
}

export interface SchemaPayload {
  labels: string[];
  edges: [string, string][];
}

export interface GraphSummary {
  graph: string;
  vertices: number;
  edges: number;
  labels: number;
}

export interface SessionInfo {
  session: string;
  graph: string;
  filter: string[];
  l_c: string[];
  l_b: string[];
}

export type OperatorKind = "select" | "expand" | "navigate";

/** One operator the client has issued; kept so a past state can be reached
 * again by replaying the prefix into a fresh session. */
export type OperatorCall =
  | { kind: "select"; vertices: string[] }
  | { kind: "expand"; l_c: string[] }
  | { kind: "navigate"; l_c: string[]; l_b: string[] };
