// DOM renderers for the five component kinds. No framework: each component
// is a plain element tree wired to the API client or the chat session.

import { ApiClient } from './api'
import { ChatSession } from './chat'
import {
  ButtonComponent,
  ChartComponent,
  ChatComponent,
  Component,
  FormComponent,
  RecordObject,
  TableComponent,
  WebSocketCtor,
} from './types'

export interface AppContext {
  api: ApiClient
  agentWs: string
  webSocket: WebSocketCtor
  accent: string
  showError(message: string): void
  registerRefresh(entity: string, refresh: () => void): void
  refreshEntity(entity: string): void
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag)
  if (className) node.className = className
  if (text !== undefined) node.textContent = text
  return node
}

function section(name: string, kind: string, accent: string): HTMLElement {
  const box = el('section', `wk-component wk-${kind}`)
  box.dataset.component = name
  const heading = el('h3', 'wk-heading', name)
  heading.style.color = accent
  box.appendChild(heading)
  return box
}

function cellText(value: unknown): string {
  if (value === null || value === undefined) return ''
  if (typeof value === 'object') return JSON.stringify(value)
  return String(value)
}

export function renderComponent(comp: Component, ctx: AppContext): HTMLElement {
  switch (comp.kind) {
    case 'table':
      return renderTable(comp, ctx)
    case 'form':
      return renderForm(comp, ctx)
    case 'button':
      return renderButton(comp, ctx)
    case 'chart':
      return renderChart(comp, ctx)
    case 'chat':
      return renderChat(comp, ctx)
  }
}

function renderTable(comp: TableComponent, ctx: AppContext): HTMLElement {
  const box = section(comp.name, 'table', ctx.accent)
  const table = el('table', 'wk-rows')
  const head = el('thead')
  const headRow = el('tr')
  for (const column of ['id', ...comp.columns]) headRow.appendChild(el('th', '', column))
  head.appendChild(headRow)
  const body = el('tbody')
  table.appendChild(head)
  table.appendChild(body)
  box.appendChild(table)

  const refresh = () => {
    ctx.api
      .list(comp.entity)
      .then((response) => {
        body.innerHTML = ''
        const rows = [...response.items].sort((a, b) => a.id - b.id)
        for (const record of rows) {
          const tr = el('tr')
          tr.dataset.id = String(record.id)
          for (const column of ['id', ...comp.columns]) {
            tr.appendChild(el('td', '', cellText(record[column])))
          }
          body.appendChild(tr)
        }
      })
      .catch((error) => ctx.showError(`${comp.name}: ${error.message ?? error}`))
  }
  ctx.registerRefresh(comp.entity, refresh)
  refresh()
  return box
}

function renderForm(comp: FormComponent, ctx: AppContext): HTMLElement {
  const box = section(comp.name, 'form', ctx.accent)
  const form = el('form')
  const rows = el('div', 'wk-form-rows')
  const errors = el('ul', 'wk-field-errors')
  const status = el('p', 'wk-form-status')

  const addRow = (field = '', value = '') => {
    const row = el('div', 'wk-form-row')
    const nameInput = el('input', 'wk-field-name')
    nameInput.placeholder = 'field'
    nameInput.value = field
    const valueInput = el('input', 'wk-field-value')
    valueInput.placeholder = 'value'
    valueInput.value = value
    const error = el('span', 'wk-field-error')
    row.appendChild(nameInput)
    row.appendChild(valueInput)
    row.appendChild(error)
    rows.appendChild(row)
    return row
  }
  addRow()

  const addButton = el('button', 'wk-add-field', '+ field')
  addButton.type = 'button'
  addButton.addEventListener('click', () => addRow())

  const submit = el('button', 'wk-submit', `Create ${comp.entity}`)
  submit.type = 'submit'
  submit.style.background = ctx.accent

  // values are typed by shape: numbers, booleans and null pass through as JSON
  const parseValue = (text: string): unknown => {
    try {
      return JSON.parse(text)
    } catch {
      return text
    }
  }

  form.addEventListener('submit', (event) => {
    event.preventDefault()
    const payload: Record<string, unknown> = {}
    for (const row of Array.from(rows.children)) {
      const name = (row.querySelector('.wk-field-name') as HTMLInputElement).value.trim()
      const value = (row.querySelector('.wk-field-value') as HTMLInputElement).value
      if (name) payload[name] = parseValue(value)
      ;(row.querySelector('.wk-field-error') as HTMLElement).textContent = ''
    }
    errors.innerHTML = ''
    status.textContent = ''
    ctx.api
      .create(comp.entity, payload)
      .then((outcome) => {
        if (outcome.ok && outcome.record) {
          status.textContent = `created ${comp.entity} #${outcome.record.id}`
          rows.innerHTML = ''
          addRow()
          ctx.refreshEntity(comp.entity)
          return
        }
        for (const fieldError of outcome.errors ?? []) {
          const item = el('li', 'wk-field-error-item', `${fieldError.field}: ${fieldError.code}`)
          item.dataset.field = fieldError.field
          item.dataset.code = fieldError.code
          errors.appendChild(item)
          for (const row of Array.from(rows.children)) {
            const nameInput = row.querySelector('.wk-field-name') as HTMLInputElement
            if (nameInput.value.trim() === fieldError.field) {
              ;(row.querySelector('.wk-field-error') as HTMLElement).textContent = fieldError.code
            }
          }
        }
      })
      .catch((error) => ctx.showError(`${comp.name}: ${error.message ?? error}`))
  })

  form.appendChild(rows)
  form.appendChild(addButton)
  form.appendChild(submit)
  box.appendChild(form)
  box.appendChild(errors)
  box.appendChild(status)
  return box
}

function renderButton(comp: ButtonComponent, ctx: AppContext): HTMLElement {
  const box = section(comp.name, 'button', ctx.accent)
  const idInput = el('input', 'wk-call-id')
  idInput.placeholder = 'record id'
  const trigger = el('button', 'wk-invoke', `${comp.entity}.${comp.method}`)
  trigger.style.background = ctx.accent
  const result = el('p', 'wk-call-result')
  trigger.addEventListener('click', () => {
    const id = Number(idInput.value)
    if (!Number.isInteger(id) || id < 1) {
      result.textContent = 'enter a record id'
      return
    }
    ctx.api
      .call(comp.entity, id, comp.method)
      .then((value) => {
        result.textContent = `result: ${JSON.stringify(value)}`
        ctx.refreshEntity(comp.entity)
      })
      .catch((error) => ctx.showError(`${comp.name}: ${error.message ?? error}`))
  })
  box.appendChild(idInput)
  box.appendChild(trigger)
  box.appendChild(result)
  return box
}

const CHART_WIDTH = 320
const CHART_HEIGHT = 160
const SVG_NS = 'http://www.w3.org/2000/svg'

function svgNode(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag)
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value)
  return node
}

function renderChart(comp: ChartComponent, ctx: AppContext): HTMLElement {
  const box = section(comp.name, 'chart', ctx.accent)
  const svg = svgNode('svg', {
    viewBox: `0 0 ${CHART_WIDTH} ${CHART_HEIGHT}`,
    width: String(CHART_WIDTH),
    height: String(CHART_HEIGHT),
  })
  box.appendChild(svg)

  const draw = (records: RecordObject[]) => {
    svg.innerHTML = ''
    const points = records
      .sort((a, b) => a.id - b.id)
      .map((r) => ({ label: cellText(r[comp.x]), value: Number(r[comp.y]) || 0 }))
    if (points.length === 0) return
    const max = Math.max(...points.map((p) => p.value), 1)
    if (comp.chart_kind === 'bar') {
      const band = CHART_WIDTH / points.length
      points.forEach((point, i) => {
        const height = (point.value / max) * (CHART_HEIGHT - 20)
        svg.appendChild(
          svgNode('rect', {
            x: String(i * band + band * 0.1),
            y: String(CHART_HEIGHT - height),
            width: String(band * 0.8),
            height: String(height),
            fill: ctx.accent,
            'data-label': point.label,
          }),
        )
      })
    } else if (comp.chart_kind === 'line') {
      const step = points.length > 1 ? CHART_WIDTH / (points.length - 1) : 0
      const coords = points
        .map((point, i) => `${i * step},${CHART_HEIGHT - (point.value / max) * (CHART_HEIGHT - 20)}`)
        .join(' ')
      svg.appendChild(
        svgNode('polyline', { points: coords, fill: 'none', stroke: ctx.accent, 'stroke-width': '2' }),
      )
    } else {
      const total = points.reduce((sum, p) => sum + p.value, 0) || 1
      const cx = CHART_WIDTH / 2
      const cy = CHART_HEIGHT / 2
      const radius = CHART_HEIGHT / 2 - 10
      let angle = -Math.PI / 2
      points.forEach((point, i) => {
        const sweep = (point.value / total) * Math.PI * 2
        const x1 = cx + radius * Math.cos(angle)
        const y1 = cy + radius * Math.sin(angle)
        angle += sweep
        const x2 = cx + radius * Math.cos(angle)
        const y2 = cy + radius * Math.sin(angle)
        const large = sweep > Math.PI ? 1 : 0
        svg.appendChild(
          svgNode('path', {
            d: `M ${cx} ${cy} L ${x1} ${y1} A ${radius} ${radius} 0 ${large} 1 ${x2} ${y2} Z`,
            fill: ctx.accent,
            opacity: String(1 - (i / Math.max(points.length, 1)) * 0.6),
            'data-label': point.label,
          }),
        )
      })
    }
  }

  const refresh = () => {
    ctx.api
      .list(comp.entity)
      .then((response) => draw(response.items))
      .catch((error) => ctx.showError(`${comp.name}: ${error.message ?? error}`))
  }
  ctx.registerRefresh(comp.entity, refresh)
  refresh()
  return box
}

function renderChat(comp: ChatComponent, ctx: AppContext): HTMLElement {
  const box = section(comp.name, 'chat', ctx.accent)
  const log = el('div', 'wk-chat-log')
  const form = el('form', 'wk-chat-form')
  const input = el('input', 'wk-chat-input')
  input.placeholder = 'type a message'
  const send = el('button', 'wk-chat-send', 'Send')
  send.type = 'submit'
  send.style.background = ctx.accent
  const reconnect = el('button', 'wk-chat-reconnect', 'Reconnect')
  reconnect.type = 'button'
  reconnect.style.display = 'none'

  const append = (direction: 'in' | 'out', text: string) => {
    const line = el('p', `wk-chat-line wk-chat-${direction}`, text)
    log.appendChild(line)
    log.scrollTop = log.scrollHeight
  }

  const base = ctx.agentWs.replace(/\/$/, '')
  const url = base.endsWith('/ws') || base.includes('/ws/') ? base : `${base}/ws`
  const session = new ChatSession(
    url,
    {
      onReplies: (replies) => {
        for (const reply of replies) append('in', reply)
      },
      onDisconnect: () => {
        append('in', '[disconnected]')
        reconnect.style.display = ''
      },
    },
    ctx.webSocket,
  )
  session.connect()

  form.addEventListener('submit', (event) => {
    event.preventDefault()
    const text = input.value.trim()
    if (!text) return
    if (session.send(text)) {
      append('out', text)
      input.value = ''
    }
  })
  reconnect.addEventListener('click', () => {
    reconnect.style.display = 'none'
    session.connect()
  })

  form.appendChild(input)
  form.appendChild(send)
  box.appendChild(log)
  box.appendChild(form)
  box.appendChild(reconnect)
  return box
}
