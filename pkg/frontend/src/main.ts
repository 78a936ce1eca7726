// Browser entry: canvas rendering and event wiring around the controller.

import { ApiClient } from "./api.js";
import { Camera, buildScene, edgeTooltip, pickEdge } from "./scene.js";
import { SessionController } from "./state.js";
import { buildChart } from "./trace.js";

const api = new ApiClient("");
const controller = new SessionController(api);

const canvas = document.getElementById("view") as HTMLCanvasElement;
const chartCanvas = document.getElementById("chart") as HTMLCanvasElement;
const status = document.getElementById("status") as HTMLDivElement;
const tooltip = document.getElementById("tooltip") as HTMLDivElement;

const camera: Camera = { yaw: 0.6, pitch: 0.4, zoom: 220, width: 900, height: 640 };
let dragging = false;
let lastX = 0;
let lastY = 0;

function draw(): void {
  const ctx = canvas.getContext("2d")!;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const scene = buildScene(controller.state, camera);
  for (const e of scene.edges) {
    ctx.beginPath();
    ctx.moveTo(e.x1, e.y1);
    ctx.lineTo(e.x2, e.y2);
    if (e.selected) {
      ctx.strokeStyle = "#ff8c00";
      ctx.lineWidth = 4;
    } else if (e.odd) {
      ctx.strokeStyle = "#d62728";
      ctx.lineWidth = 3;
    } else {
      ctx.strokeStyle = "#bbbbbb";
      ctx.lineWidth = 1;
    }
    ctx.stroke();
  }
  for (const v of scene.vertices) {
    ctx.beginPath();
    ctx.arc(v.x, v.y, v.boundary ? 6 : 4, 0, 2 * Math.PI);
    ctx.fillStyle = v.fill;
    ctx.fill();
    ctx.strokeStyle = v.boundary ? "#000000" : "#666666";
    ctx.lineWidth = v.boundary ? 2 : 1;
    ctx.stroke();
  }
  const hud = scene.hud;
  status.textContent = hud.banner
    ? hud.banner
    : `phi=${hud.phi} |O|=${hud.oddCount} revision=${hud.revision}`;
  drawChart();
}

function drawChart(): void {
  const ctx = chartCanvas.getContext("2d")!;
  ctx.clearRect(0, 0, chartCanvas.width, chartCanvas.height);
  const model = buildChart(controller.state.trace, chartCanvas.width, chartCanvas.height);
  const paths: Array<[string, [number, number][]]> = [
    ["#d62728", model.phiPath],
    ["#2e86de", model.oddPath],
  ];
  for (const [color, path] of paths) {
    if (path.length === 0) continue;
    ctx.beginPath();
    ctx.moveTo(path[0][0], path[0][1]);
    for (const [x, y] of path.slice(1)) ctx.lineTo(x, y);
    ctx.strokeStyle = color;
    ctx.lineWidth = 1.5;
    ctx.stroke();
  }
  ctx.fillStyle = "#000000";
  for (const [x, y] of model.branches) {
    ctx.fillRect(x - 2, y - 2, 4, 4);
  }
}

canvas.addEventListener("mousedown", (ev) => {
  dragging = true;
  lastX = ev.offsetX;
  lastY = ev.offsetY;
});

canvas.addEventListener("mouseup", () => {
  dragging = false;
});

canvas.addEventListener("mousemove", (ev) => {
  if (dragging) {
    camera.yaw += (ev.offsetX - lastX) * 0.01;
    camera.pitch += (ev.offsetY - lastY) * 0.01;
    lastX = ev.offsetX;
    lastY = ev.offsetY;
    draw();
    return;
  }
  const scene = buildScene(controller.state, camera);
  const hit = pickEdge(scene, ev.offsetX, ev.offsetY);
  tooltip.textContent = hit ? edgeTooltip(scene, hit) : "";
});

canvas.addEventListener("click", (ev) => {
  const scene = buildScene(controller.state, camera);
  const hit = pickEdge(scene, ev.offsetX, ev.offsetY);
  if (!hit) return;
  const verdict = controller.clickEdge(hit[0], hit[1]);
  if (!verdict.cuttable) {
    tooltip.textContent = verdict.reason;
  }
  draw();
});

function wireButton(id: string, handler: () => Promise<void>): void {
  const el = document.getElementById(id) as HTMLButtonElement;
  el.addEventListener("click", () => {
    handler().then(draw).catch((err) => {
      status.textContent = `error: ${(err as Error).message}`;
    });
  });
}

wireButton("create", async () => {
  const name = (document.getElementById("construction") as HTMLInputElement).value;
  await controller.create(name);
});
wireButton("cut", () => controller.confirmCut());
wireButton("undo", () => controller.undo());
wireButton("anneal", async () => {
  await controller.annealSteps(100);
});
wireButton("export", async () => {
  const log = await controller.exportLog();
  const blob = new Blob([log], { type: "text/plain" });
  const link = document.createElement("a");
  link.href = URL.createObjectURL(blob);
  link.download = "moves.txt";
  link.click();
});

draw();
