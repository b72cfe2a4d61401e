import { ApiClient, type FetchLike } from "./api.js";
import { BoardController } from "./controller.js";
import { decodeAssignment, encodeAssignment } from "./state.js";

const DEFAULT_API = "http://localhost:8000";

/** Boot the board. Session id and board layout live in the URL, so a reload
    (or a shared link) restores the same state. */
export async function bootstrap(root: HTMLElement, fetchFn?: FetchLike): Promise<BoardController> {
  const params = new URLSearchParams(window.location.search);
  const api = new ApiClient(params.get("api") ?? DEFAULT_API, fetchFn);
  let sessionId = params.get("session");
  if (!sessionId) {
    const created = await api.createDemoSession();
    sessionId = created.session_id;
  }
  const board = params.get("board");
  const controller = await BoardController.boot(
    api,
    root,
    sessionId,
    board ? decodeAssignment(board) : undefined,
  );

  const syncUrl = (assignment: Record<string, string>) => {
    const next = new URLSearchParams(window.location.search);
    next.set("session", sessionId!);
    next.set("board", encodeAssignment(assignment));
    window.history.replaceState(null, "", `${window.location.pathname}?${next}`);
  };
  controller.onAssignmentChange = syncUrl;
  syncUrl(controller.state.assignment);
  return controller;
}

const root = document.getElementById("app");
if (root) {
  bootstrap(root).catch((error) => {
    root.textContent = `failed to start: ${error}`;
  });
}
