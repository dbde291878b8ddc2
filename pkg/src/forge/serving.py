"""Run an ASGI app on a background uvicorn server with a stop/wait handle."""

from __future__ import annotations

import threading
import time

import uvicorn


class ServeError(Exception):
    """Raised when a service fails to start (e.g. the port is already bound)."""


class ServiceHandle:
    """A running HTTP/WebSocket service; ``stop()`` drains in-flight requests."""

    def __init__(self, server: uvicorn.Server, thread: threading.Thread, host: str, port: int):
        self._server = server
        self._thread = thread
        self.host = host
        self.port = port

    @property
    def base_url(self) -> str:
        return f"http://{self.host}:{self.port}"

    def stop(self, timeout: float = 10.0) -> None:
        self._server.should_exit = True
        self._thread.join(timeout)

    def wait(self) -> None:
        self._thread.join()


def start_app(app, host: str = "127.0.0.1", port: int = 0, timeout: float = 10.0) -> ServiceHandle:
    """Serve ``app`` in a daemon thread; returns once the socket is bound.

    ``port=0`` binds an ephemeral port; the handle reports the actual one.
    """
    config = uvicorn.Config(app, host=host, port=port, log_level="warning", access_log=False)
    server = uvicorn.Server(config)

    def run() -> None:
        try:
            server.run()
        except SystemExit:  # uvicorn exits the thread on startup failure
            pass

    thread = threading.Thread(target=run, daemon=True)
    thread.start()
    deadline = time.monotonic() + timeout
    while not server.started:
        if not thread.is_alive():
            raise ServeError(f"service failed to start on {host}:{port} (port already bound?)")
        if time.monotonic() > deadline:
            server.should_exit = True
            raise ServeError(f"service did not start within {timeout}s")
        time.sleep(0.005)
    bound_port = port
    for asgi_server in server.servers:
        for sock in asgi_server.sockets:
            bound_port = sock.getsockname()[1]
            break
    return ServiceHandle(server, thread, host, bound_port)
