"""Deployment manifest emission and repository publishing.

Publishing is create-only: it creates a repository through the provider's
HTTP API and uploads every project file through the contents endpoint, in
lexicographic path order. Configuration comes from ``FORGE_VCS_TOKEN``
(required) and ``FORGE_VCS_BASE`` (default ``https://api.github.com``); the
auth header is exactly ``Authorization: token <value>``.

Error codes: E401 repository already exists, E402 authentication failure
(including a missing token, raised before any network call), E403 any other
creation or upload failure (aborts, naming the failing step or path).
"""

from __future__ import annotations

import base64
import os
import re
from dataclasses import dataclass

import requests

from .model import Model, normalize_identifier
from .project import GeneratedProject

MANIFEST_FILE = "render.yaml"

DEFAULT_VCS_BASE = "https://api.github.com"

_REPO_NAME_RE = re.compile(r"[a-z0-9-]+")

_PLAIN_YAML_RE = re.compile(r"[A-Za-z0-9][A-Za-z0-9 ._/=@-]*")


@dataclass(frozen=True)
class ServiceCommands:
    """Build/start command set for the emitted services."""

    api_build: str = "pip install -r backend/requirements.txt"
    api_start: str = "python backend/main.py"
    web_build: str = "echo static site prebuilt"
    web_publish_path: str = "frontend"
    agent_build: str = "pip install -r agent/requirements.txt"
    agent_start: str = "python agent/main.py"


DEFAULT_COMMANDS = ServiceCommands()


def _yaml_scalar(value: str) -> str:
    if _PLAIN_YAML_RE.fullmatch(value):
        return value
    escaped = value.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def emit_deploy_manifest(model: Model, commands: ServiceCommands = DEFAULT_COMMANDS) -> str:
    """Free-plan service list: API + static site, plus an agent service if any.

    Keys are emitted in the order type, name, plan, buildCommand, then
    startCommand or staticPublishPath.
    """
    snake = normalize_identifier(model.name)
    services: list[list[tuple[str, str]]] = [
        [
            ("type", "web"),
            ("name", f"{snake}-api"),
            ("plan", "free"),
            ("buildCommand", commands.api_build),
            ("startCommand", commands.api_start),
        ],
        [
            ("type", "static"),
            ("name", f"{snake}-web"),
            ("plan", "free"),
            ("buildCommand", commands.web_build),
            ("staticPublishPath", commands.web_publish_path),
        ],
    ]
    if model.agents:
        services.append(
            [
                ("type", "web"),
                ("name", f"{snake}-agent"),
                ("plan", "free"),
                ("buildCommand", commands.agent_build),
                ("startCommand", commands.agent_start),
            ]
        )
    lines = ["services:"]
    for service in services:
        prefix = "  - "
        for key, value in service:
            lines.append(f"{prefix}{key}: {_yaml_scalar(value)}")
            prefix = "    "
    return "\n".join(lines) + "\n"


def encode_content(data: bytes) -> str:
    """Standard base64 with padding, no line wrapping."""
    return base64.b64encode(data).decode("ascii")


@dataclass(frozen=True)
class RepoRef:
    full_name: str  # "owner/name"
    html_url: str


@dataclass(frozen=True)
class VcsConfig:
    base_url: str
    token: str | None

    @classmethod
    def from_env(cls) -> "VcsConfig":
        return cls(
            base_url=os.environ.get("FORGE_VCS_BASE", DEFAULT_VCS_BASE),
            token=os.environ.get("FORGE_VCS_TOKEN"),
        )


class PublishError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


def publish(project: GeneratedProject, repo_name: str, vcs: VcsConfig) -> RepoRef:
    """Create ``repo_name`` and upload every project file; returns the repo ref."""
    if not _REPO_NAME_RE.fullmatch(repo_name):
        raise ValueError(f"repository name must match [a-z0-9-]+: {repo_name!r}")
    if not vcs.token:
        raise PublishError("E402", "no auth token configured (set FORGE_VCS_TOKEN)")
    base = vcs.base_url.rstrip("/")
    headers = {"Authorization": f"token {vcs.token}"}

    try:
        response = requests.post(
            f"{base}/user/repos", json={"name": repo_name, "private": False}, headers=headers
        )
    except requests.RequestException as exc:
        raise PublishError("E403", f"repository creation failed: {exc}") from exc
    if response.status_code in (409, 422):
        raise PublishError("E401", f"repository {repo_name!r} already exists")
    if response.status_code in (401, 403):
        raise PublishError("E402", f"authentication failed (HTTP {response.status_code})")
    if response.status_code != 201:
        raise PublishError("E403", f"repository creation failed: HTTP {response.status_code}")
    created = response.json()
    ref = RepoRef(full_name=created["full_name"], html_url=created["html_url"])

    for path, content in project.items():
        body = {"message": "forge publish", "content": encode_content(content)}
        try:
            upload = requests.put(f"{base}/repos/{ref.full_name}/contents/{path}", json=body, headers=headers)
        except requests.RequestException as exc:
            raise PublishError("E403", f"upload failed for {path}: {exc}") from exc
        if upload.status_code not in (200, 201):
            raise PublishError("E403", f"upload failed for {path}: HTTP {upload.status_code}")
    return ref
