/** HTML renderers for the view models.
 *
 * Pure string producers so they are testable without a browser; main.ts
 * injects the results into the page.  Numbers are formatted for display
 * but always come verbatim from view-model fields.
 */

import type {
  RankingView,
  ScoreboardView,
  ShelfRow,
  TreeNodeView,
  TreeView,
} from "./viewmodel.js";

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderRanking(view: RankingView): string {
  const pathText = view.path.length ? view.path.join(".") : "root";
  const counts = view.classLabels
    .map((label, i) => `${esc(label)}: ${view.counts[i]}`)
    .join(", ");
  const rows = view.rows
    .map((row, i) => {
      const classes = ["rank-row"];
      if (row.isDefault) classes.push("default");
      if (row.highlighted) classes.push("near-max");
      const width = Math.round(row.ratio * 100);
      return (
        `<tr class="${classes.join(" ")}" data-index="${i}">` +
        `<td>${row.isDefault ? "&#9654;" : ""}</td>` +
        `<td>${esc(row.label)}</td>` +
        `<td>${row.gain.toFixed(4)}</td>` +
        `<td><div class="ratio-bar" style="width:${width}%"></div>` +
        `${row.ratio.toFixed(3)}</td>` +
        `<td><button data-choose="${i}">choose</button></td></tr>`
      );
    })
    .join("");
  return (
    `<div class="frontier"><h3>node ${esc(pathText)}</h3>` +
    `<p class="counts">${counts}</p>` +
    `<table><thead><tr><th></th><th>test</th><th>gain</th>` +
    `<th>ratio</th><th></th></tr></thead><tbody>${rows}</tbody></table></div>`
  );
}

export function renderTreeComplete(): string {
  return `<div class="frontier complete"><h3>tree complete</h3></div>`;
}

function renderNode(node: TreeNodeView, view: TreeView): string {
  const bar = node.fractions
    .map(
      (f, i) =>
        `<span class="dist dist-${i}" style="width:${Math.round(f * 100)}%" ` +
        `title="${esc(view.classLabels[i])}"></span>`,
    )
    .join("");
  const header =
    `<span class="node-label">${esc(node.label)}</span>` +
    `<span class="node-counts">[${node.counts.join(", ")}]</span>` +
    `<span class="node-bar">${bar}</span>`;
  if (node.isLeaf) {
    return `<li class="leaf">${header}</li>`;
  }
  const children = node.children.map((c) => renderNode(c, view)).join("");
  return `<li class="internal"><details open><summary>${header}</summary><ul>${children}</ul></details></li>`;
}

export function renderTree(view: TreeView): string {
  const badges = [
    `<span class="badge size">${view.size} nodes</span>`,
    view.pruned ? `<span class="badge pruned">pruned</span>` : "",
    view.complete ? "" : `<span class="badge partial">in progress</span>`,
  ].join("");
  return `<div class="tree">${badges}<ul>${renderNode(view.root, view)}</ul></div>`;
}

export function renderShelf(rows: ShelfRow[]): string {
  if (rows.length === 0) {
    return `<div class="shelf empty">no shelved trees yet</div>`;
  }
  const body = rows
    .map(
      (row) =>
        `<tr><td>tree${row.index}</td><td>${esc(row.rootTest)}</td>` +
        `<td>${row.size}</td><td>${row.pruned ? "yes" : "no"}</td></tr>`,
    )
    .join("");
  return (
    `<div class="shelf"><table><thead><tr><th>tree</th><th>root</th>` +
    `<th>size</th><th>pruned</th></tr></thead><tbody>${body}</tbody></table></div>`
  );
}

export function renderScoreboard(view: ScoreboardView): string {
  const body = [...view.rows, view.combined]
    .map(
      (row) =>
        `<tr class="${row.modelId === view.combined.modelId ? "combined" : ""}">` +
        `<td>${esc(row.modelId)}</td><td>${row.percentError.toFixed(2)}</td>` +
        `<td>${row.halfBrier.toFixed(6)}</td><td>${row.n}</td></tr>`,
    )
    .join("");
  const warnings = view.warnings
    .map((w) => `<li class="similarity-warning">${esc(w)}</li>`)
    .join("");
  return (
    `<div class="scoreboard"><table><thead><tr><th>model</th>` +
    `<th>error %</th><th>half-Brier</th><th>n</th></tr></thead>` +
    `<tbody>${body}</tbody></table>` +
    (warnings ? `<ul class="warnings">${warnings}</ul>` : "") +
    `</div>`
  );
}
