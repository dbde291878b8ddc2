// Thin client for the generated CRUD API.

import { FieldError, ListResponse, RecordObject } from './types'

/** Lowercases a PascalCase name, underscoring interior uppercase letters. */
export function snakeName(name: string): string {
  let out = ''
  for (let i = 0; i < name.length; i++) {
    const ch = name[i]
    if (i > 0 && ch >= 'A' && ch <= 'Z') out += '_'
    out += ch.toLowerCase()
  }
  return out
}

export interface CreateOutcome {
  ok: boolean
  record?: RecordObject
  errors?: FieldError[]
}

export class ApiClient {
  constructor(private baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/$/, '')
  }

  private url(path: string): string {
    return `${this.baseUrl}${path}`
  }

  async list(entity: string): Promise<ListResponse> {
    const response = await fetch(this.url(`/api/${snakeName(entity)}`))
    if (!response.ok) throw new Error(`list ${entity} failed: HTTP ${response.status}`)
    return (await response.json()) as ListResponse
  }

  async create(entity: string, payload: Record<string, unknown>): Promise<CreateOutcome> {
    const response = await fetch(this.url(`/api/${snakeName(entity)}`), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(payload),
    })
    if (response.status === 201) {
      return { ok: true, record: (await response.json()) as RecordObject }
    }
    if (response.status === 422) {
      const body = (await response.json()) as { errors: FieldError[] }
      return { ok: false, errors: body.errors }
    }
    throw new Error(`create ${entity} failed: HTTP ${response.status}`)
  }

  async call(entity: string, id: number, method: string): Promise<unknown> {
    const response = await fetch(this.url(`/api/${snakeName(entity)}/${id}/call/${method}`), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: '{}',
    })
    const body = (await response.json()) as Record<string, unknown>
    if (!response.ok) throw new Error(`call returned HTTP ${response.status}: ${body.error}`)
    return body.result
  }
}
