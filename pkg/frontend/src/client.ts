/**
 * WebSocket client for the engine session endpoint.
 *
 * One socket, one command per message, events handed to a single callback
 * in arrival order. Reconnects with a short delay when the connection
 * drops; the server starts a fresh session per connection, so the app
 * replays its setup commands on every open.
 */

import type { Command, EngineEvent } from "./protocol.js";
import { decodeEvent, encodeCommand } from "./protocol.js";

export class EngineClient {
  private url: string;
  private ws: WebSocket | null = null;
  private closed = false;

  onEvent: ((event: EngineEvent) => void) | null = null;
  onStatus: ((connected: boolean) => void) | null = null;

  constructor(url: string) {
    this.url = url;
  }

  connect(): void {
    if (this.ws && this.ws.readyState <= WebSocket.OPEN) return;
    this.closed = false;
    this.ws = new WebSocket(this.url);

    this.ws.addEventListener("open", () => {
      this.onStatus?.(true);
    });

    this.ws.addEventListener("close", () => {
      this.onStatus?.(false);
      if (!this.closed) {
        setTimeout(() => this.connect(), 1000);
      }
    });

    this.ws.addEventListener("error", () => {
      this.onStatus?.(false);
    });

    this.ws.addEventListener("message", (ev) => {
      if (typeof ev.data !== "string") return;
      let event: EngineEvent;
      try {
        event = decodeEvent(ev.data);
      } catch {
        return;
      }
      this.onEvent?.(event);
    });
  }

  get connected(): boolean {
    return this.ws !== null && this.ws.readyState === WebSocket.OPEN;
  }

  send(command: Command): boolean {
    if (!this.connected) return false;
    this.ws!.send(encodeCommand(command));
    return true;
  }

  close(): void {
    this.closed = true;
    this.ws?.close();
    this.ws = null;
  }
}
