/** SVG rendering of a served graph payload.
 *
 * The drawing is a pure function of the last payload plus the layout: every
 * node group and edge path is rebuilt from it, so the view can never show an
 * edge the server did not send.  First-order nodes draw as solid boxes,
 * higher-order nodes as dashed ones; each declared port becomes a stub with
 * its name as a tooltip.
 */
import { layoutGraph, portCentre } from "./layout.js";
const SVG_NS = "http://www.w3.org/2000/svg";
export function edgeKey(edge) {
    const [[an, ap], [bn, bp]] = edge;
    return `${an}:${ap}--${bn}:${bp}`;
}
function el(tag, attrs) {
    const node = document.createElementNS(SVG_NS, tag);
    for (const [key, value] of Object.entries(attrs)) {
        node.setAttribute(key, value);
    }
    return node;
}
function edgePath(layout, edge) {
    const [[an, ap], [bn, bp]] = edge;
    const a = portCentre(layout, an, ap);
    const b = portCentre(layout, bn, bp);
    const sag = Math.max(18, Math.abs(a.y - b.y) / 2);
    return (`M ${a.x} ${a.y} C ${a.x} ${a.y + sag}, ` +
        `${b.x} ${b.y + sag}, ${b.x} ${b.y}`);
}
export function renderGraph(svg, payload, options = {}) {
    const layout = layoutGraph(payload.nodes);
    svg.replaceChildren();
    svg.setAttribute("viewBox", `0 0 ${layout.width} ${layout.height}`);
    const edgeGroup = el("g", { class: "edges" });
    for (const edge of payload.edges) {
        edgeGroup.append(el("path", {
            class: "edge",
            "data-edge": edgeKey(edge),
            d: edgePath(layout, edge),
        }));
    }
    svg.append(edgeGroup);
    for (const node of payload.nodes) {
        const box = layout.boxes.get(node.id);
        const classes = ["node", node.class];
        if (options.highlight?.has(node.id))
            classes.push("highlight");
        if (options.fresh?.has(node.id))
            classes.push("fresh");
        const group = el("g", {
            class: classes.join(" "),
            "data-id": node.id,
            "data-label": node.label,
        });
        const rect = el("rect", {
            x: String(box.x),
            y: String(box.y),
            width: String(box.width),
            height: String(box.height),
            rx: "8",
        });
        if (node.class === "ho") {
            rect.setAttribute("stroke-dasharray", "6 4");
        }
        group.append(rect);
        const text = el("text", {
            x: String(box.x + box.width / 2),
            y: String(box.y + box.height / 2 - 4),
            "text-anchor": "middle",
        });
        text.textContent = node.label;
        group.append(text);
        node.ports.forEach((name, i) => {
            const centre = box.ports[i];
            const stub = el("circle", {
                class: "port",
                "data-port": String(i + 1),
                cx: String(centre.x),
                cy: String(centre.y),
                r: "4",
            });
            const tip = document.createElementNS(SVG_NS, "title");
            tip.textContent = `${node.id}:${i + 1} (${name})`;
            stub.append(tip);
            group.append(stub);
        });
        svg.append(group);
    }
    return layout;
}
