/** Headless application core: session state, staged selection, operator
 * dispatch and history bookkeeping. Rendering hangs off the snapshot
 * listener, so this class is fully testable without a DOM.
 *
 * Contract with the server: the visible picture is always the last payload
 * returned; nothing is recomputed client-side. One operator request is in
 * flight at most; gestures arriving while busy are rejected.
 */

import { ApiClient } from "./api.js";
import { buildBreadcrumb, parseHistory, type BreadcrumbModel } from "./history.js";
import type { OperatorCall, SchemaPayload, ViewPayload } from "./types.js";

export interface Snapshot {
  graphId: string;
  sessionId: string;
  schema: SchemaPayload;
  view: ViewPayload;
  breadcrumb: BreadcrumbModel;
  staged: string[];
  busy: boolean;
  error: string | null;
}

export type SnapshotListener = (snapshot: Snapshot) => void;

export class AppCore {
  private graphId = "";
  private sessionId = "";
  private schema: SchemaPayload = { labels: [], edges: [] };
  private view: ViewPayload | null = null;
  private breadcrumb: BreadcrumbModel | null = null;
  private staged = new Set<string>();
  private busy = false;
  private error: string | null = null;
  private opLog: OperatorCall[] = [];
  private entry: { l_c: string[]; l_b: string[] } = { l_c: [], l_b: [] };

  constructor(
    private readonly api: ApiClient,
    private readonly listener: SnapshotListener = () => {},
  ) {}

  get operatorLog(): readonly OperatorCall[] {
    return this.opLog;
  }

  snapshot(): Snapshot {
    if (!this.view || !this.breadcrumb) throw new Error("app not started");
    return {
      graphId: this.graphId,
      sessionId: this.sessionId,
      schema: this.schema,
      view: this.view,
      breadcrumb: this.breadcrumb,
      staged: [...this.staged].sort(),
      busy: this.busy,
      error: this.error,
    };
  }

  private emit(): void {
    if (this.view && this.breadcrumb) this.listener(this.snapshot());
  }

  async startWithGraphText(text: string, lC: string[], lB: string[]): Promise<void> {
    const summary = await this.api.createGraph(text);
    await this.startWithGraphId(summary.graph, lC, lB);
  }

  async startWithGraphId(graphId: string, lC: string[], lB: string[]): Promise<void> {
    this.graphId = graphId;
    this.schema = await this.api.getSchema(graphId);
    const session = await this.api.createSession(graphId, lC, lB);
    this.sessionId = session.session;
    this.entry = { l_c: session.l_c, l_b: session.l_b };
    this.opLog = [];
    this.staged.clear();
    this.view = await this.api.getView(this.sessionId);
    await this.refreshHistory();
    this.emit();
  }

  /** Click on a rendered vertex: toggle it in the staged selection. Pure
   * client state; the operator fires on applySelection(). */
  toggleStaged(vertexId: string): void {
    if (this.busy) return;
    if (this.staged.has(vertexId)) {
      this.staged.delete(vertexId);
    } else {
      this.staged.add(vertexId);
    }
    this.emit();
  }

  async applySelection(): Promise<void> {
    const vertices = [...this.staged].sort();
    if (vertices.length === 0) return;
    await this.operate({ kind: "select", vertices });
  }

  async expandTo(lC: string[]): Promise<void> {
    await this.operate({ kind: "expand", l_c: lC });
  }

  async navigateTo(lC: string[], lB: string[]): Promise<void> {
    await this.operate({ kind: "navigate", l_c: lC, l_b: lB });
  }

  private async operate(call: OperatorCall): Promise<void> {
    if (this.busy) throw new Error("an operation is already in flight");
    this.busy = true;
    this.error = null;
    this.emit();
    try {
      this.view = await this.dispatch(this.sessionId, call);
      this.opLog.push(call);
      this.staged.clear();
      await this.refreshHistory();
    } catch (err) {
      this.error = err instanceof Error ? err.message : String(err);
    } finally {
      this.busy = false;
      this.emit();
    }
    if (this.error) throw new Error(this.error);
  }

  private dispatch(sessionId: string, call: OperatorCall): Promise<ViewPayload> {
    switch (call.kind) {
      case "select":
        return this.api.select(sessionId, call.vertices);
      case "expand":
        return this.api.expand(sessionId, call.l_c);
      case "navigate":
        return this.api.navigate(sessionId, call.l_c, call.l_b);
    }
  }

  /** Jump back to a past walk position by replaying the operator prefix
   * into a fresh session; the old session stays untouched on the server. */
  async replayTo(walkPosition: number): Promise<void> {
    if (this.busy) throw new Error("an operation is already in flight");
    if (walkPosition < 0 || walkPosition > this.opLog.length) {
      throw new Error(`no walk position ${walkPosition}`);
    }
    this.busy = true;
    this.error = null;
    this.emit();
    try {
      const prefix = this.opLog.slice(0, walkPosition);
      const session = await this.api.createSession(
        this.graphId,
        this.entry.l_c,
        this.entry.l_b,
      );
      for (const call of prefix) {
        await this.dispatch(session.session, call);
      }
      this.sessionId = session.session;
      this.opLog = prefix;
      this.staged.clear();
      this.view = await this.api.getView(this.sessionId);
      await this.refreshHistory();
    } catch (err) {
      this.error = err instanceof Error ? err.message : String(err);
    } finally {
      this.busy = false;
      this.emit();
    }
    if (this.error) throw new Error(this.error);
  }

  private async refreshHistory(): Promise<void> {
    const text = await this.api.getHistory(this.sessionId);
    this.breadcrumb = buildBreadcrumb(parseHistory(text));
  }
}
