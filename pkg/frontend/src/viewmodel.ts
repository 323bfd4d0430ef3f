/** Pure payload-to-view transformations.
 *
 * Every number shown in the UI is copied from a service payload field;
 * nothing here recomputes gains, errors, or probabilities.  The only
 * arithmetic is presentation layout (bar widths from served ratios and
 * count fractions).
 */

import type {
  EvalReportPayload,
  FrontierPayload,
  ShelfEntry,
  ShelfEvalPayload,
  TreeNodePayload,
  TreePayload,
} from "./api.js";

export interface RankingRow {
  label: string;
  gain: number;
  ratio: number;
  isDefault: boolean;
  /** near-maximal per the served threshold: a worthwhile alternate choice */
  highlighted: boolean;
}

export interface RankingView {
  path: number[];
  counts: number[];
  classLabels: string[];
  threshold: number;
  rows: RankingRow[];
}

export function testLabel(test: {
  type: string;
  attribute: string;
  threshold?: number;
}): string {
  if (test.type === "threshold") {
    return `${test.attribute} <= ${test.threshold}`;
  }
  return test.attribute;
}

export function rankingView(frontier: FrontierPayload): RankingView {
  return {
    path: frontier.path,
    counts: frontier.counts,
    classLabels: frontier.class_labels,
    threshold: frontier.gain_ratio_threshold,
    rows: frontier.ranked.map((entry, i) => ({
      label: testLabel(entry.test),
      gain: entry.gain,
      ratio: entry.ratio,
      isDefault: i === frontier.default_index,
      highlighted: entry.ratio >= frontier.gain_ratio_threshold,
    })),
  };
}

export interface TreeNodeView {
  label: string;
  counts: number[];
  /** count fractions for the class-distribution bar, 0 when empty */
  fractions: number[];
  isLeaf: boolean;
  children: TreeNodeView[];
}

export interface TreeView {
  size: number;
  pruned: boolean;
  complete: boolean;
  classLabels: string[];
  root: TreeNodeView;
}

function nodeView(node: TreeNodePayload): TreeNodeView {
  const total = node.counts.reduce((a, b) => a + b, 0);
  const fractions = node.counts.map((c) => (total > 0 ? c / total : 0));
  if (node.kind === "leaf") {
    return {
      label: node.label ?? "",
      counts: node.counts,
      fractions,
      isLeaf: true,
      children: [],
    };
  }
  return {
    label: testLabel(node.test!),
    counts: node.counts,
    fractions,
    isLeaf: false,
    children: (node.children ?? []).map(nodeView),
  };
}

export function treeView(tree: TreePayload): TreeView {
  return {
    size: tree.size,
    pruned: tree.pruning !== null,
    complete: tree.complete ?? true,
    classLabels: tree.class_labels,
    root: nodeView(tree.root),
  };
}

export interface ShelfRow {
  index: number;
  size: number;
  pruned: boolean;
  rootTest: string;
}

export function shelfView(entries: ShelfEntry[]): ShelfRow[] {
  return entries.map((e) => ({
    index: e.index,
    size: e.size,
    pruned: e.pruned,
    rootTest: e.root_test ? e.root_test.join(" ") : "(leaf)",
  }));
}

export interface ScoreboardRow {
  modelId: string;
  percentError: number;
  halfBrier: number;
  n: number;
}

export interface ScoreboardView {
  rows: ScoreboardRow[];
  combined: ScoreboardRow;
  warnings: string[];
}

function reportRow(report: EvalReportPayload): ScoreboardRow {
  return {
    modelId: report.model_id,
    percentError: report.percent_error,
    halfBrier: report.half_brier,
    n: report.n,
  };
}

export function scoreboardView(payload: ShelfEvalPayload): ScoreboardView {
  return {
    rows: payload.reports.map(reportRow),
    combined: reportRow(payload.combined),
    warnings: payload.warnings.map(
      (w) => `trees ${w.trees.join(" and ")} share ${w.kind.replace("common-", "")}`,
    ),
  };
}

/** Discards responses that arrive after a newer request was issued. */
export class SequenceGate {
  private issued = 0;

  next(): number {
    this.issued += 1;
    return this.issued;
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.issued;
  }
}
