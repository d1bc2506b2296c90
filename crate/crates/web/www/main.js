import init, { deformed_curve, multiplier_curve, ising_curve } from "./pkg/ttdeform_web.js";

const N = 240;
const $ = (id) => document.getElementById(id);
const num = (id) => parseFloat($(id).value);

function op() {
  return document.querySelector("input[name=op]:checked").value;
}

function compute() {
  const alpha = num("alpha");
  const lo = num("lo"), hi = num("hi");
  switch (op()) {
    case "series":
      return deformed_curve($("seed").value, alpha, num("d2"), lo, hi, N);
    case "multiplier":
      return multiplier_curve(num("k"), num("sigma"), alpha, lo, hi, N);
    default:
      return ising_curve(alpha, num("d2"), lo, hi, N);
  }
}

function draw(ys, lo, hi) {
  const cv = $("plot");
  const g = cv.getContext("2d");
  g.clearRect(0, 0, cv.width, cv.height);
  const finite = ys.filter(Number.isFinite);
  if (finite.length === 0) {
    $("status").textContent = "no admissible points in this range";
    return;
  }
  let ymin = Math.min(...finite), ymax = Math.max(...finite);
  if (ymax - ymin < 1e-300) { ymin -= 1; ymax += 1; }
  const pad = 40;
  const sx = (i) => pad + (i / (ys.length - 1)) * (cv.width - 2 * pad);
  const sy = (y) => cv.height - pad - ((y - ymin) / (ymax - ymin)) * (cv.height - 2 * pad);

  g.strokeStyle = "#999";
  g.strokeRect(pad, pad, cv.width - 2 * pad, cv.height - 2 * pad);
  g.fillStyle = "#444";
  g.font = "22px system-ui";
  g.fillText(ymax.toPrecision(6), 4, pad - 8);
  g.fillText(ymin.toPrecision(6), 4, cv.height - 8);
  g.fillText(String(lo), pad, cv.height - 8 + 0);
  g.fillText(String(hi), cv.width - pad - 40, cv.height - 8);

  // gaps where the series is not defined
  g.strokeStyle = "#1565c0";
  g.lineWidth = 3;
  g.beginPath();
  let open = false;
  ys.forEach((y, i) => {
    if (!Number.isFinite(y)) { open = false; return; }
    if (open) g.lineTo(sx(i), sy(y)); else g.moveTo(sx(i), sy(y));
    open = true;
  });
  g.stroke();
  const gaps = ys.length - finite.length;
  $("status").textContent = gaps ? `${gaps} of ${ys.length} points outside the admissible window` : "";
}

function update() {
  $("alpha-v").textContent = num("alpha").toFixed(3);
  const lo = num("lo"), hi = num("hi");
  if (!(hi > lo)) {
    $("status").textContent = "need from < to";
    return;
  }
  draw(compute(), lo, hi);
}

await init();
document.querySelectorAll("input, select").forEach((el) => el.addEventListener("input", update));
update();
