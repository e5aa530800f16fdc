"""Local HTTP server bundled for link-audit tests.

Serves the six probe scenarios (direct file, redirect to file, missing,
delayed response, auth-gated page, plain page) and tracks how many requests
are in flight at once so tests can assert the prober's per-host bound.
Arbitrary JSON routes can be registered for API-shaped fixtures.
"""

from __future__ import annotations

import json
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Callable

JsonRoute = Callable[[dict], tuple[int, dict]]

FILE_BODY = b"PK\x03\x04 fixture archive bytes"
GATED_BODY = b"<html><body><h1>Sign in</h1><p>Institutional login required.</p></body></html>"
PAGE_BODY = (
    b"<html><body><h1>Dataset project page</h1>"
    b"<p>Contact the maintainers to obtain the data.</p></body></html>"
)


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # noqa: A003 - silence default logging
        pass

    def do_GET(self):
        self.server.dispatch(self, None)  # type: ignore[attr-defined]

    def do_POST(self):
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b"{}"
        try:
            body = json.loads(raw.decode("utf-8") or "{}")
        except ValueError:
            body = {}
        self.server.dispatch(self, body)  # type: ignore[attr-defined]

    def send_payload(self, status: int, body: bytes, headers: dict[str, str]):
        try:
            self.send_response(status)
            for name, value in headers.items():
                self.send_header(name, value)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            if body:
                self.wfile.write(body)
        except (BrokenPipeError, ConnectionResetError):
            pass  # client gave up (e.g. timeout scenarios); nothing to report


class FixtureServer(ThreadingHTTPServer):
    daemon_threads = True

    def handle_error(self, request, client_address):  # abandoned sockets are expected
        import sys

        exc = sys.exc_info()[1]
        if isinstance(exc, (BrokenPipeError, ConnectionResetError)):
            return
        super().handle_error(request, client_address)

    def __init__(self, slow_seconds: float = 3.0, address: tuple[str, int] = ("127.0.0.1", 0)):
        super().__init__(address, _Handler)
        self.slow_seconds = slow_seconds
        self._lock = threading.Lock()
        self.in_flight = 0
        self.max_in_flight = 0
        self.total_requests = 0
        self.json_routes: dict[tuple[str, str], JsonRoute] = {}
        self._thread: threading.Thread | None = None

    # -- lifecycle -----------------------------------------------------------

    @property
    def base_url(self) -> str:
        host, port = self.server_address[:2]
        return f"http://{host}:{port}"

    def start(self) -> "FixtureServer":
        self._thread = threading.Thread(target=self.serve_forever, daemon=True)
        self._thread.start()
        return self

    def stop(self) -> None:
        self.shutdown()
        if self._thread is not None:
            self._thread.join(timeout=5)
        self.server_close()

    def __enter__(self) -> "FixtureServer":
        return self.start()

    def __exit__(self, *exc_info) -> None:
        self.stop()

    # -- accounting ------------------------------------------------------------

    def _enter_request(self) -> None:
        with self._lock:
            self.in_flight += 1
            self.total_requests += 1
            self.max_in_flight = max(self.max_in_flight, self.in_flight)

    def _leave_request(self) -> None:
        with self._lock:
            self.in_flight -= 1

    def reset_stats(self) -> None:
        with self._lock:
            self.max_in_flight = 0
            self.total_requests = 0

    def wait_idle(self, timeout: float = 10.0) -> None:
        """Block until no handler is in flight (abandoned slow requests drain)."""
        deadline = time.monotonic() + timeout
        while time.monotonic() < deadline:
            with self._lock:
                if self.in_flight == 0:
                    return
            time.sleep(0.02)
        raise TimeoutError("fixture server did not go idle")

    def add_json_route(self, method: str, path: str, route: JsonRoute) -> None:
        self.json_routes[(method.upper(), path)] = route

    # -- dispatch ----------------------------------------------------------------

    def dispatch(self, handler: _Handler, body: dict | None) -> None:
        self._enter_request()
        try:
            path = handler.path.split("?")[0]
            method = handler.command.upper()
            route = self.json_routes.get((method, path))
            if route is not None:
                status, payload = route(body if body is not None else _query_of(handler.path))
                raw = json.dumps(payload).encode("utf-8")
                handler.send_payload(status, raw, {"Content-Type": "application/json"})
                return
            if method == "GET":
                self._dispatch_scenario(handler, path)
                return
            handler.send_payload(404, b"not found", {"Content-Type": "text/plain"})
        finally:
            self._leave_request()

    def _dispatch_scenario(self, handler: _Handler, path: str) -> None:
        if path == "/data/file.zip":
            handler.send_payload(
                200,
                FILE_BODY,
                {
                    "Content-Type": "application/zip",
                    "Content-Disposition": 'attachment; filename="fixture.zip"',
                },
            )
        elif path == "/data/redirect":
            handler.send_payload(302, b"", {"Location": "/data/file.zip"})
        elif path == "/data/missing":
            handler.send_payload(404, b"gone", {"Content-Type": "text/plain"})
        elif path == "/data/slow":
            time.sleep(self.slow_seconds)
            handler.send_payload(200, PAGE_BODY, {"Content-Type": "text/html"})
        elif path == "/data/gated":
            handler.send_payload(200, GATED_BODY, {"Content-Type": "text/html"})
        elif path == "/data/page":
            handler.send_payload(200, PAGE_BODY, {"Content-Type": "text/html"})
        elif path == "/__stats":
            with self._lock:
                payload = {
                    "max_in_flight": self.max_in_flight,
                    "total_requests": self.total_requests,
                }
            handler.send_payload(
                200, json.dumps(payload).encode("utf-8"), {"Content-Type": "application/json"}
            )
        else:
            handler.send_payload(404, b"unknown path", {"Content-Type": "text/plain"})


def _query_of(path: str) -> dict:
    from urllib.parse import parse_qsl, urlsplit

    return dict(parse_qsl(urlsplit(path).query))
