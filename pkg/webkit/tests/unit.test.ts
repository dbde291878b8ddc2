import { describe, expect, it, vi } from 'vitest'

import { snakeName } from '../src/api'
import { ChatSession } from '../src/chat'
import { validateConfig } from '../src/mount'
import { WebSocketCtor } from '../src/types'

describe('snakeName', () => {
  it('matches the toolkit naming rule', () => {
    expect(snakeName('BookCopy')).toBe('book_copy')
    expect(snakeName('book')).toBe('book')
    expect(snakeName('FAQAgent')).toBe('f_a_q_agent')
  })
})

describe('validateConfig', () => {
  const good = {
    app: 'X',
    api_base: '${API_BASE_URL}',
    agent_ws: '${AGENT_WS_URL}',
    pages: [{ name: 'P', style: {}, components: [{ kind: 'form', name: 'F', entity: 'E' }] }],
  }

  it('accepts a generated config shape', () => {
    expect(validateConfig(good)).toBe(true)
  })

  it('rejects missing or mistyped fields', () => {
    expect(validateConfig(null)).toBe(false)
    expect(validateConfig({})).toBe(false)
    expect(validateConfig({ ...good, pages: 'nope' })).toBe(false)
    expect(validateConfig({ ...good, pages: [{ name: 1, style: {}, components: [] }] })).toBe(false)
  })
})

class FakeSocket {
  static instances: FakeSocket[] = []
  sent: string[] = []
  onopen: ((ev?: unknown) => void) | null = null
  onmessage: ((ev: { data: unknown }) => void) | null = null
  onclose: ((ev?: unknown) => void) | null = null
  onerror: ((ev?: unknown) => void) | null = null

  constructor(public url: string) {
    FakeSocket.instances.push(this)
  }

  send(data: string): void {
    this.sent.push(data)
  }

  close(): void {
    this.onclose?.()
  }

  serverSays(frame: unknown): void {
    this.onmessage?.({ data: typeof frame === 'string' ? frame : JSON.stringify(frame) })
  }
}

function newSession() {
  const replies: string[][] = []
  let disconnects = 0
  const session = new ChatSession(
    'ws://test/ws',
    {
      onReplies: (r) => replies.push(r),
      onDisconnect: () => {
        disconnects++
      },
    },
    FakeSocket as unknown as WebSocketCtor,
  )
  session.connect()
  const socket = FakeSocket.instances[FakeSocket.instances.length - 1]
  return { session, socket, replies, disconnects: () => disconnects }
}

describe('ChatSession', () => {
  it('tracks the session id and sends valid user_message frames', () => {
    const { session, socket, replies } = newSession()
    expect(session.send('too early')).toBe(false)
    socket.serverSays({ type: 'session_started', session_id: 's1', state: 'A', replies: ['hi'] })
    expect(replies).toEqual([['hi']])
    expect(session.send('hello')).toBe(true)
    expect(JSON.parse(socket.sent[0])).toEqual({
      type: 'user_message',
      session_id: 's1',
      text: 'hello',
    })
  })

  it('appends agent replies in order', () => {
    const { socket, replies } = newSession()
    socket.serverSays({ type: 'session_started', session_id: 's1', state: 'A', replies: ['a'] })
    socket.serverSays({ type: 'agent_reply', session_id: 's1', state: 'B', replies: ['b', 'c'] })
    expect(replies).toEqual([['a'], ['b', 'c']])
  })

  it('ignores malformed and unknown server frames', () => {
    const warn = vi.spyOn(console, 'warn').mockImplementation(() => {})
    const { socket, replies } = newSession()
    socket.serverSays('not json')
    socket.serverSays({ type: 'mystery' })
    socket.serverSays({ type: 'error', code: 'E303', message: 'nope' })
    expect(replies).toEqual([])
    expect(warn).toHaveBeenCalledTimes(3)
    warn.mockRestore()
  })

  it('reports disconnects unless closed on purpose', () => {
    const first = newSession()
    first.socket.onclose?.()
    expect(first.disconnects()).toBe(1)

    const second = newSession()
    second.session.close()
    expect(second.disconnects()).toBe(0)
  })
})
