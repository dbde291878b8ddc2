// Mirrors app-config.json and the chat wire protocol emitted by the toolkit.

export interface TableComponent {
  kind: 'table'
  name: string
  entity: string
  columns: string[]
}

export interface FormComponent {
  kind: 'form'
  name: string
  entity: string
}

export interface ButtonComponent {
  kind: 'button'
  name: string
  entity: string
  method: string
}

export interface ChartComponent {
  kind: 'chart'
  name: string
  entity: string
  chart_kind: 'bar' | 'line' | 'pie'
  x: string
  y: string
}

export interface ChatComponent {
  kind: 'chat'
  name: string
  agent: string
}

export type Component =
  | TableComponent
  | FormComponent
  | ButtonComponent
  | ChartComponent
  | ChatComponent

export interface PageConfig {
  name: string
  style: Record<string, string>
  components: Component[]
}

export interface AppConfig {
  app: string
  api_base: string
  agent_ws: string
  pages: PageConfig[]
}

export interface RecordObject {
  id: number
  [attribute: string]: unknown
}

export interface ListResponse {
  items: RecordObject[]
  total: number
}

export interface FieldError {
  field: string
  code: string
}

// server -> client frames
export interface SessionFrame {
  type: 'session_started' | 'agent_reply'
  session_id: string
  state: string
  replies: string[]
}

export interface ErrorFrame {
  type: 'error'
  code: string
  message: string
}

export type ServerFrame = SessionFrame | ErrorFrame

// client -> server frame
export interface UserMessageFrame {
  type: 'user_message'
  session_id: string
  text: string
}

// minimal constructor surface so tests can inject the `ws` package
export type WebSocketLike = {
  send(data: string): void
  close(): void
  onopen: ((ev?: unknown) => void) | null
  onmessage: ((ev: { data: unknown }) => void) | null
  onclose: ((ev?: unknown) => void) | null
  onerror: ((ev?: unknown) => void) | null
}

export type WebSocketCtor = new (url: string) => WebSocketLike

export interface MountOptions {
  apiBase?: string
  agentWs?: string
  webSocket?: WebSocketCtor
}
