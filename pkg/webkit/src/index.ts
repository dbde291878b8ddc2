import { ApiClient, snakeName } from './api'
import { ChatSession } from './chat'
import { mountApp, validateConfig } from './mount'

export { ApiClient, ChatSession, mountApp, snakeName, validateConfig }
export * from './types'

declare global {
  interface Window {
    webkit?: { mountApp: typeof mountApp }
  }
}

if (typeof window !== 'undefined') {
  window.webkit = { mountApp }
}
