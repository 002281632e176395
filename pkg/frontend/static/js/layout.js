/** Deterministic layered layout.
 *
 * The server annotates every node with a breadth-first layer; nodes become
 * one row per layer, ordered by id within the row.  All geometry derives
 * from the node's label, port count, layer, and position among its layer
 * siblings — nothing else — so a node keeps its exact position whenever its
 * own row is unchanged, which keeps diffs visually stable.
 */
export const NODE_HEIGHT = 46;
export const ROW_GAP = 64;
export const COLUMN_GAP = 36;
export const MARGIN = 40;
const CHAR_WIDTH = 9;
const PORT_SPACING = 22;
export function nodeWidth(node) {
    const forLabel = 18 + CHAR_WIDTH * node.label.length;
    const forPorts = 12 + PORT_SPACING * node.ports.length;
    return Math.max(64, forLabel, forPorts);
}
function portPoints(node, x, y) {
    const width = nodeWidth(node);
    const n = node.ports.length;
    return node.ports.map((_, i) => ({
        x: x + (width * (i + 0.5)) / Math.max(n, 1),
        y: y + NODE_HEIGHT,
    }));
}
export function layoutGraph(nodes) {
    const rows = new Map();
    for (const node of nodes) {
        const row = rows.get(node.layer) ?? [];
        row.push(node);
        rows.set(node.layer, row);
    }
    const boxes = new Map();
    let width = 0;
    let height = 0;
    for (const layer of [...rows.keys()].sort((a, b) => a - b)) {
        const row = rows.get(layer);
        row.sort((a, b) => (a.id < b.id ? -1 : a.id > b.id ? 1 : 0));
        const y = MARGIN + layer * (NODE_HEIGHT + ROW_GAP);
        let x = MARGIN;
        for (const node of row) {
            const w = nodeWidth(node);
            boxes.set(node.id, {
                id: node.id,
                x,
                y,
                width: w,
                height: NODE_HEIGHT,
                ports: portPoints(node, x, y),
            });
            x += w + COLUMN_GAP;
        }
        width = Math.max(width, x - COLUMN_GAP + MARGIN);
        height = Math.max(height, y + NODE_HEIGHT + MARGIN);
    }
    return { boxes, width: Math.max(width, 2 * MARGIN), height: Math.max(height, 2 * MARGIN) };
}
/** Centre of port `port` (1-based) on node `id`; throws on unknown refs. */
export function portCentre(layout, id, port) {
    const box = layout.boxes.get(id);
    if (!box || port < 1 || port > box.ports.length) {
        throw new Error(`no such port ${id}:${port}`);
    }
    return box.ports[port - 1];
}
