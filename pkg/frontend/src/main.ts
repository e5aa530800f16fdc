import { ApiClient } from "./api.js";
import { TriageController } from "./controller.js";
import {
  bindKeyboard,
  renderBanner,
  renderCard,
  renderCompletion,
  renderStatsBar,
} from "./ui.js";

async function boot(): Promise<void> {
  const api = new ApiClient("");
  const controller = new TriageController(api);
  const cardRoot = document.getElementById("card")!;
  const bannerRoot = document.getElementById("banner")!;
  const statsRoot = document.getElementById("stats")!;

  const redraw = async () => {
    renderBanner(bannerRoot, controller.banner);
    if (controller.completed) {
      renderCompletion(cardRoot, controller.completed);
    } else if (controller.card) {
      renderCard(cardRoot, controller.card, controller.remaining, controller.revision);
    }
    renderStatsBar(statsRoot, await controller.refreshStats());
  };

  bindKeyboard(controller, () => void redraw());
  await controller.load();
  await redraw();
}

void boot();
