/** The side panels: redex list, derivation strip, badge and toast. */
export function renderRedexList(list, redexes, callbacks) {
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
export function renderDerivation(strip, derivation) {
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
export function setBadge(badge, normalForm) {
    badge.hidden = !normalForm;
    badge.textContent = normalForm ? "normal form" : "";
}
export function showToast(toast, message) {
    toast.textContent = message;
    toast.classList.add("show");
    setTimeout(() => toast.classList.remove("show"), 2500);
}
