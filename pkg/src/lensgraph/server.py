"""Protocol server: WebSocket endpoint for the web UI, plus small HTTP helpers.

Serves exactly one interactive client at a time.  Endpoints:

* ``GET /ws`` upgrades to a WebSocket carrying the newline-delimited
  command/event protocol, one session per connection
* ``GET /usecase.json?seed=N`` returns the generated demonstration graph
* ``GET /`` and other paths serve static files from an optional UI directory,
  or a plain landing page when none is configured

The WebSocket layer is a minimal server-side RFC 6455 implementation: text
and binary data frames (with fragmentation), ping/pong, and close. Client
frames must be masked, as the RFC requires.
"""

from __future__ import annotations

import base64
import hashlib
import mimetypes
import struct
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .errors import ProtocolError
from .graph import generate_usecase_graph, serialize_graph
from .session import Session, apply_command, parse_command, serialize_event

_WS_GUID = "258EAFA5-E914-47DA-95CA-C5AB0DC85B11"

_PLACEHOLDER_PAGE = b"""<!doctype html>
<html><head><meta charset="utf-8"><title>lensgraph</title></head>
<body><h1>lensgraph protocol server</h1>
<p>WebSocket endpoint: <code>/ws</code> (newline-delimited JSON commands and events).</p>
<p>Demonstration graph: <code><a href="/usecase.json">/usecase.json?seed=0</a></code></p>
</body></html>
"""


class _SocketClosed(Exception):
    """Peer went away mid-frame."""


def _recv_exact(sock, n: int) -> bytes:
    chunks = []
    remaining = n
    while remaining > 0:
        chunk = sock.recv(remaining)
        if not chunk:
            raise _SocketClosed()
        chunks.append(chunk)
        remaining -= len(chunk)
    return b"".join(chunks)


def _read_frame(sock):
    """One raw frame: (fin, opcode, payload). Client frames must be masked."""
    b0, b1 = _recv_exact(sock, 2)
    fin = bool(b0 & 0x80)
    if b0 & 0x70:
        raise ProtocolError("reserved websocket bits set")
    opcode = b0 & 0x0F
    masked = bool(b1 & 0x80)
    length = b1 & 0x7F
    if length == 126:
        (length,) = struct.unpack(">H", _recv_exact(sock, 2))
    elif length == 127:
        (length,) = struct.unpack(">Q", _recv_exact(sock, 8))
    if not masked:
        raise ProtocolError("client frames must be masked")
    mask = _recv_exact(sock, 4)
    payload = bytearray(_recv_exact(sock, length))
    for i in range(length):
        payload[i] ^= mask[i % 4]
    return fin, opcode, bytes(payload)


def _send_frame(sock, opcode: int, payload: bytes) -> None:
    header = bytearray([0x80 | opcode])
    n = len(payload)
    if n < 126:
        header.append(n)
    elif n < 1 << 16:
        header.append(126)
        header += struct.pack(">H", n)
    else:
        header.append(127)
        header += struct.pack(">Q", n)
    sock.sendall(bytes(header) + payload)


def send_text(sock, data: bytes | str) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    _send_frame(sock, 0x1, data)


def send_close(sock, code: int = 1000) -> None:
    _send_frame(sock, 0x8, struct.pack(">H", code))


def recv_message(sock):
    """Next data message as (opcode, payload), handling control frames inline.

    Returns ``(0x8, payload)`` when the peer closes.  Fragmented messages are
    reassembled; interleaved pings are answered transparently.
    """
    opcode = None
    buffer = bytearray()
    while True:
        fin, frame_op, payload = _read_frame(sock)
        if frame_op == 0x8:
            return 0x8, payload
        if frame_op == 0x9:
            _send_frame(sock, 0xA, payload)
            continue
        if frame_op == 0xA:
            continue
        if frame_op in (0x1, 0x2):
            if opcode is not None:
                raise ProtocolError("new data message before previous finished")
            opcode = frame_op
        elif frame_op == 0x0:
            if opcode is None:
                raise ProtocolError("continuation frame without a start frame")
        else:
            raise ProtocolError(f"unsupported websocket opcode {frame_op}")
        buffer += payload
        if fin:
            return opcode, bytes(buffer)


class LensGraphServer(ThreadingHTTPServer):
    """HTTP server owning the single-interactive-client flag."""

    daemon_threads = True

    def __init__(self, address, ui_dir: str | Path | None = None):
        super().__init__(address, _Handler)
        self.ui_dir = Path(ui_dir).resolve() if ui_dir is not None else None
        self._client_mutex = threading.Lock()
        self._client_connected = False

    def try_acquire_client(self) -> bool:
        with self._client_mutex:
            if self._client_connected:
                return False
            self._client_connected = True
            return True

    def release_client(self) -> None:
        with self._client_mutex:
            self._client_connected = False


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server: LensGraphServer

    def log_message(self, fmt, *args):
        pass

    def do_GET(self):
        url = urlparse(self.path)
        if url.path == "/ws":
            self._websocket(url)
        elif url.path == "/usecase.json":
            self._usecase(url)
        else:
            self._static(url)

    def _send_body(self, status: int, body: bytes, content_type: str) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _usecase(self, url) -> None:
        query = parse_qs(url.query)
        raw = query.get("seed", ["0"])[0]
        try:
            seed = int(raw)
        except ValueError:
            self._send_body(400, b"seed must be an integer\n", "text/plain; charset=utf-8")
            return
        body = serialize_graph(generate_usecase_graph(seed))
        self._send_body(200, body, "application/json")

    def _static(self, url) -> None:
        root = self.server.ui_dir
        if root is None:
            if url.path == "/":
                self._send_body(200, _PLACEHOLDER_PAGE, "text/html; charset=utf-8")
            else:
                self._send_body(404, b"not found\n", "text/plain; charset=utf-8")
            return
        rel = url.path.lstrip("/") or "index.html"
        target = (root / rel).resolve()
        if root not in target.parents and target != root:
            self._send_body(404, b"not found\n", "text/plain; charset=utf-8")
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._send_body(404, b"not found\n", "text/plain; charset=utf-8")
            return
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self._send_body(200, target.read_bytes(), ctype)

    def _websocket(self, url) -> None:
        key = self.headers.get("Sec-WebSocket-Key")
        upgrade = (self.headers.get("Upgrade") or "").lower()
        if upgrade != "websocket" or not key:
            self._send_body(400, b"websocket upgrade required\n", "text/plain; charset=utf-8")
            return
        accept = base64.b64encode(
            hashlib.sha1((key + _WS_GUID).encode("ascii")).digest()
        ).decode("ascii")
        self.send_response(101, "Switching Protocols")
        self.send_header("Upgrade", "websocket")
        self.send_header("Connection", "Upgrade")
        self.send_header("Sec-WebSocket-Accept", accept)
        self.end_headers()
        self.close_connection = True

        sock = self.connection
        if not self.server.try_acquire_client():
            refusal = {
                "type": "error",
                "payload": {"message": "another client is already connected"},
            }
            try:
                send_text(sock, serialize_event(refusal))
                send_close(sock, 1013)
            except OSError:
                pass
            return
        try:
            self._session_loop(sock)
        except (ProtocolError, _SocketClosed, OSError):
            pass
        finally:
            self.server.release_client()

    def _session_loop(self, sock) -> None:
        session = Session()
        while True:
            opcode, payload = recv_message(sock)
            if opcode == 0x8:
                try:
                    send_close(sock)
                except OSError:
                    pass
                return
            for line in payload.split(b"\n"):
                if not line.strip():
                    continue
                try:
                    command = parse_command(line)
                except ProtocolError as exc:
                    event = {"type": "error", "payload": {"message": str(exc)}}
                    send_text(sock, serialize_event(event))
                    continue
                session, events = apply_command(session, command)
                for event in events:
                    send_text(sock, serialize_event(event))


def serve(host: str, port: int, ui_dir: str | Path | None = None) -> LensGraphServer:
    """Bind a server; the caller drives ``serve_forever`` and shutdown."""
    return LensGraphServer((host, port), ui_dir=ui_dir)
