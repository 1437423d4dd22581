/** WebSocket event stream with capped-backoff reconnect. */

export interface StreamHandlers {
  onEvent: (raw: string) => void;
  onStatus?: (connected: boolean) => void;
}

export type SocketFactory = (url: string) => WebSocket;

export function connectStream(
  url: string,
  handlers: StreamHandlers,
  makeSocket: SocketFactory = (u) => new WebSocket(u),
): () => void {
  let socket: WebSocket | null = null;
  let closed = false;
  let retryMs = 1000;

  const open = () => {
    socket = makeSocket(url);

    socket.onopen = () => {
      retryMs = 1000;
      handlers.onStatus?.(true);
    };

    socket.onmessage = (ev) => {
      handlers.onEvent(typeof ev.data === "string" ? ev.data : String(ev.data));
    };

    socket.onclose = () => {
      handlers.onStatus?.(false);
      if (!closed) {
        setTimeout(open, retryMs);
        retryMs = Math.min(retryMs * 2, 10000);
      }
    };

    socket.onerror = () => {
      // onclose follows and handles the retry
    };
  };

  open();

  return () => {
    closed = true;
    socket?.close();
  };
}
