// WebSocket chat session against the agent service.

import { ServerFrame, SessionFrame, UserMessageFrame, WebSocketCtor } from './types'

export interface ChatHandlers {
  onReplies(replies: string[], state: string): void
  onDisconnect(): void
}

export class ChatSession {
  private socket: InstanceType<WebSocketCtor> | null = null
  private sessionId: string | null = null
  private closedByUs = false

  constructor(
    private url: string,
    private handlers: ChatHandlers,
    private webSocket: WebSocketCtor,
  ) {}

  connect(): void {
    this.closedByUs = false
    this.sessionId = null
    const socket = new this.webSocket(this.url)
    this.socket = socket
    socket.onmessage = (event) => this.handleFrame(String(event.data))
    socket.onclose = () => {
      if (!this.closedByUs) this.handlers.onDisconnect()
    }
    socket.onerror = () => {
      // onclose follows; nothing to resend (no automatic retry by design)
    }
  }

  private handleFrame(raw: string): void {
    let frame: ServerFrame
    try {
      frame = JSON.parse(raw) as ServerFrame
    } catch {
      console.warn('chat: ignoring malformed server frame', raw)
      return
    }
    if (frame.type === 'session_started') {
      this.sessionId = frame.session_id
      this.handlers.onReplies(frame.replies, (frame as SessionFrame).state)
    } else if (frame.type === 'agent_reply') {
      this.handlers.onReplies(frame.replies, (frame as SessionFrame).state)
    } else if (frame.type === 'error') {
      console.warn(`chat: server error ${frame.code}: ${frame.message}`)
    } else {
      console.warn('chat: ignoring unknown frame type', frame)
    }
  }

  get ready(): boolean {
    return this.sessionId !== null
  }

  send(text: string): boolean {
    if (!this.socket || this.sessionId === null) return false
    const frame: UserMessageFrame = { type: 'user_message', session_id: this.sessionId, text }
    this.socket.send(JSON.stringify(frame))
    return true
  }

  close(): void {
    this.closedByUs = true
    this.socket?.close()
  }
}
