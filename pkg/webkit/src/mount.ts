// Entry point: validate the app config, resolve service URLs, render pages.

import { ApiClient } from './api'
import { AppContext, renderComponent } from './render'
import { AppConfig, MountOptions, PageConfig } from './types'

const DEFAULT_ACCENT = '#36597d'

function isPlaceholder(value: string): boolean {
  return value.startsWith('${')
}

export function validateConfig(config: unknown): config is AppConfig {
  if (typeof config !== 'object' || config === null) return false
  const c = config as Record<string, unknown>
  if (typeof c.app !== 'string' || typeof c.api_base !== 'string') return false
  if (typeof c.agent_ws !== 'string' || !Array.isArray(c.pages)) return false
  for (const page of c.pages as unknown[]) {
    const p = page as Record<string, unknown>
    if (typeof p.name !== 'string' || !Array.isArray(p.components)) return false
    if (typeof p.style !== 'object' || p.style === null) return false
    for (const comp of p.components as Record<string, unknown>[]) {
      if (typeof comp.kind !== 'string' || typeof comp.name !== 'string') return false
    }
  }
  return true
}

function resolveApiBase(config: AppConfig, opts: MountOptions): string {
  if (opts.apiBase) return opts.apiBase
  if (!isPlaceholder(config.api_base)) return config.api_base
  return window.location.origin
}

function resolveAgentWs(config: AppConfig, opts: MountOptions): string {
  if (opts.agentWs) return opts.agentWs
  if (!isPlaceholder(config.agent_ws)) return config.agent_ws
  return window.location.origin.replace(/^http/, 'ws')
}

function renderPage(page: PageConfig, ctx: AppContext, host: HTMLElement): void {
  host.innerHTML = ''
  const container = document.createElement('div')
  container.className = 'wk-page'
  container.dataset.page = page.name
  container.style.display = 'flex'
  container.style.flexDirection = page.style.layout === 'row' ? 'row' : 'column'
  container.style.gap = '16px'
  for (const comp of page.components) {
    container.appendChild(renderComponent(comp, ctx))
  }
  host.appendChild(container)
}

export function mountApp(config: unknown, root: HTMLElement, opts: MountOptions = {}): void {
  if (!validateConfig(config)) {
    console.error('webkit: app config does not match the expected schema', config)
    throw new Error('invalid app config')
  }
  root.innerHTML = ''

  const banner = document.createElement('div')
  banner.className = 'wk-error-banner'
  banner.style.display = 'none'
  banner.style.background = '#8c2f39'
  banner.style.color = '#fff'
  banner.style.padding = '8px'
  root.appendChild(banner)

  const title = document.createElement('h1')
  title.className = 'wk-title'
  title.textContent = config.app
  root.appendChild(title)

  const firstPage = config.pages[0]
  const accent = firstPage?.style.primary_color ?? DEFAULT_ACCENT
  title.style.color = accent

  const refreshables: Array<{ entity: string; refresh: () => void }> = []
  const webSocket = opts.webSocket ?? (window.WebSocket as unknown as MountOptions['webSocket'])
  if (!webSocket) throw new Error('no WebSocket implementation available')
  const ctx: AppContext = {
    api: new ApiClient(resolveApiBase(config, opts)),
    agentWs: resolveAgentWs(config, opts),
    webSocket,
    accent,
    showError(message: string) {
      banner.textContent = message
      banner.style.display = ''
    },
    registerRefresh(entity, refresh) {
      refreshables.push({ entity, refresh })
    },
    refreshEntity(entity) {
      for (const item of refreshables) {
        if (item.entity === entity) item.refresh()
      }
    },
  }

  const pageHost = document.createElement('div')
  pageHost.className = 'wk-page-host'

  if (config.pages.length > 1) {
    const tabs = document.createElement('nav')
    tabs.className = 'wk-tabs'
    for (const page of config.pages) {
      const tab = document.createElement('button')
      tab.className = 'wk-tab'
      tab.textContent = page.name
      tab.addEventListener('click', () => {
        refreshables.length = 0
        renderPage(page, ctx, pageHost)
      })
      tabs.appendChild(tab)
    }
    root.appendChild(tabs)
  }
  root.appendChild(pageHost)

  if (firstPage) renderPage(firstPage, ctx, pageHost)
}
