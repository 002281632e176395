/** The side panels: redex list, derivation strip, badge and toast. */

import type { Derivation, RedexSummary } from "./api.js";

export interface RedexListCallbacks {
  onApply(index: number): void;
  onHover(redex: RedexSummary | null): void;
}

export function renderRedexList(
  list: HTMLElement,
  redexes: RedexSummary[],
  callbacks: RedexListCallbacks,
): void {
  list.replaceChildren();
  if (redexes.length === 0) {
    const empty = document.createElement("li");
    empty.className = "empty";
    empty.textContent = "no redexes";
    list.append(empty);
    return;
  }
  for (const redex of redexes) {
    const item = document.createElement("li");
    const button = document.createElement("button");
    button.className = "redex";
    button.dataset.index = String(redex.index);
    button.textContent = `${redex.rule} @ ${redex.nodes.join(", ")}`;
    button.addEventListener("click", () => callbacks.onApply(redex.index));
    button.addEventListener("mouseenter", () => callbacks.onHover(redex));
    button.addEventListener("mouseleave", () => callbacks.onHover(null));
    item.append(button);
    list.append(item);
  }
}

export function renderDerivation(strip: HTMLElement, derivation: Derivation): void {
  strip.replaceChildren();
  const start = document.createElement("span");
  start.className = "step initial";
  start.textContent = derivation.initial_digest.slice(0, 8);
  strip.append(start);
  for (const step of derivation.steps) {
    const chip = document.createElement("span");
    chip.className = "step";
    chip.textContent = `${step.rule} → ${step.digest_after.slice(0, 8)}`;
    strip.append(chip);
  }
}

export function setBadge(badge: HTMLElement, normalForm: boolean): void {
  badge.hidden = !normalForm;
  badge.textContent = normalForm ? "normal form" : "";
}

export function showToast(toast: HTMLElement, message: string): void {
  toast.textContent = message;
  toast.classList.add("show");
  setTimeout(() => toast.classList.remove("show"), 2500);
}
