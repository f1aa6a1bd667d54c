import { el } from "../dom.js";
import type { NameIndex } from "../names.js";
import { CLASS_COLORS, CLASS_ORDER } from "../types.js";
import type {
  ChainDoc,
  CoverageClass,
  CoverageDoc,
  GraphEdgeDoc,
  RankingDoc,
  WhatIfDeltaDoc,
  ZeroDayDraft,
} from "../types.js";

function badge(cls: CoverageClass, text?: string): HTMLElement {
  return el(
    "span",
    { class: `badge badge-${cls}`, style: `background:${CLASS_COLORS[cls]}` },
    [text ?? cls],
  );
}

function hopList(chain: ChainDoc, names: NameIndex): HTMLElement {
  return el(
    "ul",
    { class: "hops" },
    chain.hops.map((hop) =>
      el("li", { class: "hop" }, [
        `${names.display(hop.from)} → ${names.display(hop.to)} ` +
          `via ${hop.link}: ` +
          (hop.protections.length > 0
            ? hop.protections.map((p) => names.display(p)).join(", ")
            : "no protections"),
      ]),
    ),
  );
}

/**
 * Chains panel: per-class summary badges, one row per chain with its class
 * and protection count, and a detection banner when any chain cannot be
 * prevented. Every number and class shown is a field of the coverage payload.
 */
export function renderChains(
  container: HTMLElement,
  coverage: CoverageDoc,
  names: NameIndex,
): void {
  const summary = el(
    "div",
    { class: "summary" },
    CLASS_ORDER.map((cls) => badge(cls, `${cls}: ${coverage.summary[cls]}`)),
  );

  const rows = coverage.entries.map((entry) =>
    el("li", { class: "chain" }, [
      el("span", { class: "chain-route" }, [names.route(entry.chain.assets)]),
      badge(entry.class),
      el("span", { class: "protection-count" }, [
        `protections: ${entry.protection_count}`,
      ]),
      hopList(entry.chain, names),
    ]),
  );

  const children: Node[] = [summary, el("ol", { class: "chain-list" }, rows)];
  if (coverage.detection_required.length > 0) {
    children.push(
      el("div", { class: "detection-banner" }, [
        `detection required — ${coverage.detection_required.length} ` +
          `chain(s) cannot be prevented: ` +
          coverage.detection_required
            .map((chain) => names.route(chain.assets))
            .join("; "),
      ]),
    );
  }
  container.replaceChildren(...children);
}

/**
 * Ranking panel: the service's protection ranking table, the greedy cut,
 * and any chains no protection can break.
 */
export function renderRanking(
  container: HTMLElement,
  ranking: RankingDoc,
  names: NameIndex,
): void {
  const head = el("tr", {}, [
    el("th", {}, ["protection"]),
    el("th", {}, ["chains broken"]),
    el("th", {}, ["weighted score"]),
  ]);
  const body = ranking.entries.map((entry) =>
    el("tr", { "data-protection": entry.protection }, [
      el("td", {}, [names.display(entry.protection)]),
      el("td", { class: "num" }, [String(entry.chains_broken)]),
      el("td", { class: "num" }, [String(entry.weighted_score)]),
    ]),
  );
  const children: Node[] = [
    el("table", { class: "ranking" }, [
      el("thead", {}, [head]),
      el("tbody", {}, body),
    ]),
    el("p", { class: "greedy-cut" }, [
      "greedy cut: " +
        (ranking.greedy_cut.length > 0
          ? ranking.greedy_cut.map((p) => names.display(p)).join(", ")
          : "(none)"),
    ]),
  ];
  if (ranking.uncut_chains.length > 0) {
    children.push(
      el("div", { class: "uncut" }, [
        "no protection breaks: " +
          ranking.uncut_chains
            .map((chain) => names.route(chain.assets))
            .join("; "),
      ]),
    );
  }
  container.replaceChildren(...children);
}

/**
 * Delta panel: baseline-versus-scenario coverage counts plus the chain-level
 * differences the service reported. An identity delta renders as
 * "no changes".
 */
export function renderDelta(
  container: HTMLElement,
  delta: WhatIfDeltaDoc,
  names: NameIndex,
): void {
  const scope = el("p", { class: "delta-scope" }, [
    `hazard ${delta.hazard}, ` +
      (delta.profile === null
        ? "all profiles"
        : `profile ${delta.profile}`),
  ]);
  const unchanged =
    delta.new_chains.length === 0 &&
    delta.removed_protection_instances.length === 0 &&
    delta.class_changes.length === 0;
  if (unchanged) {
    container.replaceChildren(
      scope,
      el("p", { class: "no-changes" }, ["no changes: scenario matches baseline"]),
    );
    return;
  }

  const summaryRows = CLASS_ORDER.map((cls) =>
    el("tr", {}, [
      el("td", {}, [cls]),
      el("td", { class: "num" }, [String(delta.baseline.summary[cls])]),
      el("td", { class: "num" }, [String(delta.scenario_result.summary[cls])]),
    ]),
  );
  const children: Node[] = [
    scope,
    el("table", { class: "delta-summary" }, [
      el("thead", {}, [
        el("tr", {}, [
          el("th", {}, ["class"]),
          el("th", {}, ["baseline"]),
          el("th", {}, ["scenario"]),
        ]),
      ]),
      el("tbody", {}, summaryRows),
    ]),
  ];

  if (delta.new_chains.length > 0) {
    children.push(
      el("p", { class: "section-label" }, [
        `new chains: ${delta.new_chains.length}`,
      ]),
      el(
        "ul",
        { class: "new-chains" },
        delta.new_chains.map((chain) =>
          el("li", {}, [
            `${names.route(chain.assets)} (protections: ` +
              `${chain.protection_count})`,
          ]),
        ),
      ),
    );
  }
  if (delta.removed_protection_instances.length > 0) {
    children.push(
      el("p", { class: "section-label" }, [
        `removed protection instances: ` +
          `${delta.removed_protection_instances.length}`,
      ]),
      el(
        "ul",
        { class: "removed-protections" },
        delta.removed_protection_instances.map((removed) =>
          el("li", {}, [
            `${names.display(removed.protection)} on hop ` +
              `${removed.hop_index} of ${names.display(removed.entry)} ` +
              `→ ${names.display(removed.target)}`,
          ]),
        ),
      ),
    );
  }
  if (delta.class_changes.length > 0) {
    children.push(
      el("p", { class: "section-label" }, [
        `class changes: ${delta.class_changes.length}`,
      ]),
      el(
        "ul",
        { class: "class-changes" },
        delta.class_changes.map((change) =>
          el("li", {}, [
            el("span", { class: "chain-route" }, [
              names.route(change.chain.assets),
            ]),
            ": ",
            badge(change.baseline_class),
            " → ",
            badge(change.scenario_class),
          ]),
        ),
      ),
    );
  }
  container.replaceChildren(...children);
}

/**
 * Protections of the edge the user clicked, each with an enable/disable
 * toggle. The `checked` attribute mirrors the draft so serialized markup
 * reflects toggle state.
 */
export function renderEdgeDetail(
  container: HTMLElement,
  edge: GraphEdgeDoc | null,
  disabled: ReadonlySet<string>,
  names: NameIndex,
  onToggle: (protectionId: string) => void,
): void {
  if (edge === null) {
    container.replaceChildren(
      el("p", { class: "hint" }, ["click an edge to inspect its protections"]),
    );
    return;
  }
  const children: Node[] = [
    el("p", { class: "edge-title" }, [
      `${names.display(edge.from)} → ${names.display(edge.to)} ` +
        `(link ${edge.link})`,
    ]),
    el("p", { class: "edge-protection-count" }, [
      `protections: ${edge.protections.length}`,
    ]),
  ];
  if (edge.protections.length > 0) {
    children.push(
      el(
        "ul",
        { class: "edge-protections" },
        edge.protections.map((protectionId) => {
          const attrs: Record<string, string> = {
            type: "checkbox",
            class: "protection-toggle",
            "data-protection": protectionId,
          };
          if (!disabled.has(protectionId)) {
            attrs.checked = "";
          }
          const input = el("input", attrs);
          input.addEventListener("change", () => onToggle(protectionId));
          return el("li", {}, [
            el("label", {}, [input, ` ${names.display(protectionId)}`]),
          ]);
        }),
      ),
    );
  }
  container.replaceChildren(...children);
}

/** Current scenario draft as removable chips; empty drafts show a hint. */
export function renderDraft(
  container: HTMLElement,
  draft: {
    compromised: ReadonlySet<string>;
    disabled: ReadonlySet<string>;
    zeroDays: readonly ZeroDayDraft[];
  },
  names: NameIndex,
  actions: {
    onRemoveCompromised: (assetId: string) => void;
    onRemoveDisabled: (protectionId: string) => void;
    onRemoveZeroDay: (index: number) => void;
  },
): void {
  const chips: Node[] = [];
  for (const assetId of Array.from(draft.compromised).sort()) {
    chips.push(
      chip(`compromised: ${names.display(assetId)}`, () =>
        actions.onRemoveCompromised(assetId),
      ),
    );
  }
  for (const protectionId of Array.from(draft.disabled).sort()) {
    chips.push(
      chip(`disabled: ${names.display(protectionId)}`, () =>
        actions.onRemoveDisabled(protectionId),
      ),
    );
  }
  draft.zeroDays.forEach((link, index) => {
    chips.push(
      chip(
        `zero-day: ${names.display(link.a)} → ` +
          `${names.display(link.b)} (${link.direction})`,
        () => actions.onRemoveZeroDay(index),
      ),
    );
  });
  if (chips.length === 0) {
    container.replaceChildren(
      el("p", { class: "hint" }, [
        "no scenario changes; click assets or edge protections to draft one",
      ]),
    );
    return;
  }
  container.replaceChildren(el("div", { class: "chips" }, chips));
}

function chip(text: string, onRemove: () => void): HTMLElement {
  const remove = el("button", { class: "chip-remove", type: "button" }, ["×"]);
  remove.addEventListener("click", onRemove);
  return el("span", { class: "chip" }, [text, remove]);
}
